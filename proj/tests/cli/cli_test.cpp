// Integration tests that drive the CLI binary end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CmdResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path err_file = dir / "stderr.txt";
  const std::string cmd =
      std::string(ETSS_CLI_PATH) + " " + args + " 2>" + err_file.string();
  CmdResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_file);
  std::stringstream ss;
  ss << err.rdbuf();
  result.err = ss.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("etss_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::string operator/(const char* name) const { return (path / name).string(); }
};

const char* kTernaryTable = "2\t01\n5\t102\n8\t112\n";

}  // namespace

TEST_CASE("split writes pinned ternary shares and combine inverts them") {
  TempDir dir;
  spit(dir / "codes.tsv", kTernaryTable);
  const auto split = run_cli(
      "split --p 3 --k 3 --l 4 --code-table " + (dir / "codes.tsv") +
          " --secret 2101 --indices 2,5,8 --fix-randomness 01201200,20100010"
          " --out-dir " + (dir / "shares"),
      dir.path);
  REQUIRE(split.exit_code == 0);

  CHECK(slurp(dir.path / "shares/share_2.etss") ==
        "ETSS1 p=3 k=3 l=4 code=custom t=2 cw=01 z=001210\n");
  CHECK(slurp(dir.path / "shares/share_5.etss") ==
        "ETSS1 p=3 k=3 l=4 code=custom t=5 cw=102 z=12022111\n");
  CHECK(slurp(dir.path / "shares/share_8.etss") ==
        "ETSS1 p=3 k=3 l=4 code=custom t=8 cw=112 z=12102222\n");

  const auto combine = run_cli("combine " + (dir / "shares/share_2.etss") + " " +
                                   (dir / "shares/share_5.etss") + " " +
                                   (dir / "shares/share_8.etss"),
                               dir.path);
  CHECK(combine.exit_code == 0);
  CHECK(combine.out == "2101\n");
}

TEST_CASE("split validates the secret length") {
  TempDir dir;
  const auto result = run_cli(
      "split --p 2 --k 2 --l 4 --codec gamma --secret 101 --indices 1,2 --seed 5"
      " --out-dir " + (dir / "x"),
      dir.path);
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("secret length") != std::string::npos);
}

TEST_CASE("split is deterministic in the seed") {
  TempDir dir;
  for (const char* sub : {"a", "b"}) {
    const auto result = run_cli(
        "split --p 2 --k 3 --l 3 --codec delta --secret 101 --indices 1,2,7"
        " --seed 42 --out-dir " + (dir.path / sub).string(),
        dir.path);
    REQUIRE(result.exit_code == 0);
  }
  for (const char* name : {"share_1.etss", "share_2.etss", "share_7.etss"}) {
    CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "b" / name));
  }
  const auto combine = run_cli("combine " + (dir / "a/share_1.etss") + " " +
                                   (dir / "b/share_2.etss") + " " +
                                   (dir / "a/share_7.etss"),
                               dir.path);
  CHECK(combine.exit_code == 0);
  CHECK(combine.out == "101\n");
}

TEST_CASE("combine recovers the binary examples") {
  TempDir dir;
  spit(dir / "s3.etss", "ETSS1 p=2 k=2 l=4 code=custom t=3 cw=101 z=000111\n");
  spit(dir / "s4.etss", "ETSS1 p=2 k=2 l=4 code=custom t=4 cw=11000 z=01110001\n");
  auto two = run_cli("combine " + (dir / "s3.etss") + " " + (dir / "s4.etss"), dir.path);
  CHECK(two.exit_code == 0);
  CHECK(two.out == "1001\n");

  spit(dir / "z2.etss", "ETSS1 p=2 k=3 l=3 code=custom t=2 cw=100 z=0001010\n");
  spit(dir / "z3.etss", "ETSS1 p=2 k=3 l=3 code=custom t=3 cw=101 z=0011111\n");
  spit(dir / "z4.etss", "ETSS1 p=2 k=3 l=3 code=custom t=4 cw=11000 z=01101000101\n");
  auto three = run_cli("combine " + (dir / "z2.etss") + " " + (dir / "z3.etss") + " " +
                           (dir / "z4.etss"),
                       dir.path);
  CHECK(three.exit_code == 0);
  CHECK(three.out == "110\n");
}

TEST_CASE("combine exit codes") {
  TempDir dir;
  spit(dir / "good.etss", "ETSS1 p=2 k=2 l=4 code=custom t=3 cw=101 z=000111\n");
  spit(dir / "corrupt.etss", "ETSS1 p=2 k=2 l=4 code=custom t=4 cw=11000 z=0111000x\n");
  spit(dir / "other_l.etss", "ETSS1 p=2 k=2 l=5 code=custom t=4 cw=11000 z=011100011\n");
  spit(dir / "dup.etss", "ETSS1 p=2 k=2 l=4 code=custom t=3 cw=101 z=000110\n");

  CHECK(run_cli("combine " + (dir / "good.etss") + " " + (dir / "corrupt.etss"), dir.path)
            .exit_code == 4);
  CHECK(run_cli("combine " + (dir / "good.etss") + " " + (dir / "other_l.etss"), dir.path)
            .exit_code == 3);
  CHECK(run_cli("combine " + (dir / "good.etss") + " " + (dir / "dup.etss"), dir.path)
            .exit_code == 5);
  CHECK(run_cli("combine " + (dir / "good.etss"), dir.path).exit_code == 5);
}

TEST_CASE("add-participant extends the binary 3-threshold group") {
  TempDir dir;
  spit(dir / "z2.etss", "ETSS1 p=2 k=3 l=3 code=custom t=2 cw=100 z=0001010\n");
  spit(dir / "z3.etss", "ETSS1 p=2 k=3 l=3 code=custom t=3 cw=101 z=0011111\n");
  spit(dir / "z4.etss", "ETSS1 p=2 k=3 l=3 code=custom t=4 cw=11000 z=01101000101\n");
  spit(dir / "codes.tsv", "2\t100\n3\t101\n4\t11000\n5\t11001\n");

  const std::string files =
      (dir / "z2.etss") + " " + (dir / "z3.etss") + " " + (dir / "z4.etss");
  const auto added = run_cli("add-participant " + files + " --new-index 5 --seed 9" +
                                 " --code-table " + (dir / "codes.tsv") + " --out " +
                                 (dir / "z5.etss"),
                             dir.path);
  REQUIRE(added.exit_code == 0);

  const auto combine = run_cli("combine " + (dir / "z2.etss") + " " + (dir / "z3.etss") +
                                   " " + (dir / "z5.etss"),
                               dir.path);
  CHECK(combine.exit_code == 0);
  CHECK(combine.out == "110\n");

  // duplicate index
  CHECK(run_cli("add-participant " + files + " --new-index 4 --seed 9 --code-table " +
                    (dir / "codes.tsv") + " --out " + (dir / "zz.etss"),
                dir.path)
            .exit_code == 2);

  // shares from different dealers
  spit(dir / "bad4.etss", "ETSS1 p=2 k=3 l=3 code=custom t=4 cw=11000 z=11101000101\n");
  CHECK(run_cli("add-participant " + (dir / "z2.etss") + " " + (dir / "z3.etss") + " " +
                    (dir / "bad4.etss") + " --new-index 5 --seed 9 --code-table " +
                    (dir / "codes.tsv") + " --out " + (dir / "zz.etss"),
                dir.path)
            .exit_code == 6);
}

TEST_CASE("add-participant soak over random parameters") {
  // the heavyweight randomized property lives in the acceptance suite;
  // this drives the same flow through the actual binary
  TempDir dir;
  unsigned state = 12345;
  auto next = [&state](unsigned bound) {
    state = state * 1103515245 + 12345;
    return (state >> 16) % bound;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned p = std::vector<unsigned>{2, 3, 5}[next(3)];
    const unsigned k = 2 + next(2);
    const unsigned ell = 1 + next(3);
    std::string secret;
    for (unsigned i = 0; i < ell; ++i) secret.push_back(char('0' + next(p)));
    const std::string codec = p == 2 ? (next(2) ? "gamma" : "delta") : "m1";

    std::string indices;
    for (unsigned i = 0; i < k; ++i) indices += (i ? "," : "") + std::to_string(i + 1);
    const fs::path shares = dir.path / ("t" + std::to_string(trial));
    const auto split = run_cli(
        "split --p " + std::to_string(p) + " --k " + std::to_string(k) + " --l " +
            std::to_string(ell) + " --codec " + codec + " --secret " + secret +
            " --indices " + indices + " --seed " + std::to_string(trial) +
            " --out-dir " + shares.string(),
        dir.path);
    REQUIRE(split.exit_code == 0);

    std::string files;
    for (unsigned i = 0; i < k; ++i)
      files += (shares / ("share_" + std::to_string(i + 1) + ".etss")).string() + " ";
    const fs::path fresh = shares / "fresh.etss";
    const auto added = run_cli("add-participant " + files + "--new-index " +
                                   std::to_string(k + 1 + next(8)) + " --seed 77 --out " +
                                   fresh.string(),
                               dir.path);
    REQUIRE(added.exit_code == 0);

    // the new share must combine with any k-1 of the old ones
    std::string subset = fresh.string();
    for (unsigned i = 0; i + 1 < k; ++i)
      subset += " " + (shares / ("share_" + std::to_string(i + 1) + ".etss")).string();
    const auto combine = run_cli("combine " + subset, dir.path);
    REQUIRE(combine.exit_code == 0);
    REQUIRE(combine.out == secret + "\n");
  }
}

TEST_CASE("sizes emits a deterministic table") {
  TempDir dir;
  const auto result = run_cli(
      "sizes --k 2,3 --t-min 3 --t-max 4 --l 1 --codecs gamma,m1 --p 3", dir.path);
  CHECK(result.exit_code == 0);
  CHECK(result.out ==
        "k,t,codec,size\n"
        "2,3,gamma,3\n"
        "2,3,m1,3\n"
        "2,4,gamma,5\n"
        "2,4,m1,3\n"
        "3,3,gamma,5\n"
        "3,3,m1,5\n"
        "3,4,gamma,9\n"
        "3,4,m1,5\n");

  const auto csv = run_cli("sizes --k 4 --t-min 1024 --t-max 1024 --l 8 --codecs delta"
                           " --csv " + (dir / "table.csv"),
                           dir.path);
  CHECK(csv.exit_code == 0);
  CHECK(slurp(dir.path / "table.csv") == "k,t,codec,size\n4,1024,delta,56\n");
}

TEST_CASE("verify-secrecy verdicts") {
  TempDir dir;
  const auto ok = run_cli(
      "verify-secrecy --p 2 --k 2 --l 1 --codec gamma --coalition 3 --secret0 0"
      " --secret1 1 --json --csv " + (dir / "counts.csv"),
      dir.path);
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("\"secure\":true") != std::string::npos);
  const std::string csv = slurp(dir.path / "counts.csv");
  CHECK(csv.substr(0, 23) == "tuple,count_s0,count_s1");

  const auto over = run_cli(
      "verify-secrecy --p 2 --k 2 --l 8 --codec gamma --coalition 64 --secret0 10101010"
      " --secret1 01010101 --budget 65536",
      dir.path);
  CHECK(over.exit_code == 2);
  CHECK(over.err.find("BudgetExceeded") != std::string::npos);
}
