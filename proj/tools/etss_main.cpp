// Command-line front end: split, combine, add-participant, sizes,
// verify-secrecy. All arithmetic lives in the library; this file only
// binds flags, files and exit codes.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "etss/scheme.hpp"
#include "etss/secrecy.hpp"
#include "etss/sizes.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// sticky exit codes, documented in the README
constexpr int kExitValidation = 2;
constexpr int kExitHeaderMismatch = 3;
constexpr int kExitMalformedRecord = 4;
constexpr int kExitReconstructFailed = 5;
constexpr int kExitInconsistentShares = 6;

int fail_with(int code, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return code;
}

void write_file_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw etss::Error(etss::ErrorCode::BadRecord, "cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

etss::Codec build_codec(std::string name, std::uint32_t p, const std::string& table_path) {
  if (!table_path.empty()) {
    if (!name.empty() && name != "custom")
      throw etss::Error(etss::ErrorCode::ParamMismatch,
                        "--code-table implies --codec custom");
    std::ifstream in(table_path);
    if (!in)
      throw etss::Error(etss::ErrorCode::BadTable, "cannot open code table " + table_path);
    return etss::Codec::custom_from_table(p, in);
  }
  if (name.empty() || name == "custom")
    throw etss::Error(etss::ErrorCode::ParamMismatch,
                      "custom codec needs --code-table FILE");
  return etss::Codec::builtin(name, p);
}

std::vector<etss::Share> load_shares(const std::vector<std::string>& files) {
  std::vector<etss::Share> shares;
  for (const std::string& file : files) {
    std::ifstream in(file);
    if (!in) throw etss::Error(etss::ErrorCode::BadRecord, "cannot open " + file);
    std::string line;
    bool found = false;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      if (found)
        throw etss::Error(etss::ErrorCode::BadRecord, file + ": more than one record");
      shares.push_back(etss::parse_share_record(line));
      found = true;
    }
    if (!found) throw etss::Error(etss::ErrorCode::BadRecord, file + ": no record");
  }
  return shares;
}

void require_common_header(const std::vector<etss::Share>& shares) {
  for (const etss::Share& sh : shares) {
    if (!(sh.params == shares.front().params))
      throw etss::Error(etss::ErrorCode::ParamMismatch, "share headers differ");
  }
}

struct SchemeFlags {
  std::uint32_t p = 2;
  std::uint32_t k = 2;
  std::uint32_t ell = 1;
  std::string codec_name;
  std::string code_table;

  void attach(CLI::App* cmd, bool with_params = true) {
    if (with_params) {
      cmd->add_option("--p", p, "prime alphabet size")->required();
      cmd->add_option("--k", k, "threshold")->required();
      cmd->add_option("--l", ell, "secret length in symbols")->required();
    }
    cmd->add_option("--codec", codec_name, "gamma|delta|m1|m2|custom");
    cmd->add_option("--code-table", code_table, "custom code table file (t<TAB>codeword)");
  }

  etss::SchemeParams params() const {
    etss::SchemeParams out{p, k, ell, build_codec(codec_name, p, code_table)};
    out.validate();
    return out;
  }
};

int cmd_split(const SchemeFlags& flags, const std::string& secret_digits,
              const std::vector<std::uint64_t>& indices, std::uint64_t seed,
              bool seed_set, const std::string& fixed_randomness,
              const std::string& out_dir) {
  try {
    const etss::SchemeParams params = flags.params();
    const etss::Secret secret = etss::Secret::from_digits(params.p, secret_digits);
    if (secret.length() != params.ell)
      return fail_with(kExitValidation, "secret length " +
                                            std::to_string(secret.length()) +
                                            " does not match --l " +
                                            std::to_string(params.ell));
    if (indices.empty()) return fail_with(kExitValidation, "no participant indices");
    if (!seed_set && fixed_randomness.empty())
      return fail_with(kExitValidation, "--seed is required");

    etss::Dealer dealer = [&] {
      if (fixed_randomness.empty()) return etss::Dealer(params, secret, seed);
      std::vector<std::string> rs;
      std::stringstream ss(fixed_randomness);
      std::string item;
      while (std::getline(ss, item, ',')) rs.push_back(item);
      return etss::Dealer::with_fixed_randomness(params, secret, rs);
    }();

    // issue everything first so a late failure leaves no files behind
    std::vector<etss::Share> shares;
    for (std::uint64_t t : indices) shares.push_back(dealer.issue(t));

    fs::create_directories(out_dir);
    for (const etss::Share& share : shares) {
      const fs::path path =
          fs::path(out_dir) / ("share_" + std::to_string(share.t) + ".etss");
      write_file_atomically(path, etss::format_share_record(share) + "\n");
      std::cout << path.string() << "\n";
    }
    return 0;
  } catch (const etss::Error& e) {
    return fail_with(kExitValidation, e.what());
  }
}

int cmd_combine(const std::vector<std::string>& files) {
  std::vector<etss::Share> shares;
  try {
    shares = load_shares(files);
  } catch (const etss::Error& e) {
    return fail_with(kExitMalformedRecord, e.what());
  }
  try {
    require_common_header(shares);
  } catch (const etss::Error& e) {
    return fail_with(kExitHeaderMismatch, e.what());
  }
  try {
    std::cout << etss::reconstruct(shares).digits() << "\n";
    return 0;
  } catch (const etss::Error& e) {
    return fail_with(kExitReconstructFailed, e.what());
  }
}

int cmd_add_participant(const SchemeFlags& flags, const std::vector<std::string>& files,
                        std::uint64_t new_index, std::uint64_t seed,
                        const std::string& out_file) {
  std::vector<etss::Share> shares;
  try {
    shares = load_shares(files);
  } catch (const etss::Error& e) {
    return fail_with(kExitMalformedRecord, e.what());
  }
  try {
    require_common_header(shares);
  } catch (const etss::Error& e) {
    return fail_with(kExitHeaderMismatch, e.what());
  }

  const etss::ShareParams& head = shares.front().params;
  etss::SchemeParams params{0, 0, 0, etss::Codec::gamma()};
  try {
    params = etss::SchemeParams{
        head.p, head.k, head.ell,
        build_codec(flags.codec_name.empty() ? head.codec_name : flags.codec_name,
                    head.p, flags.code_table)};
    params.validate();
    if (params.codec.name() != head.codec_name)
      return fail_with(kExitHeaderMismatch,
                       "records were written with codec " + head.codec_name);
  } catch (const etss::Error& e) {
    return fail_with(kExitValidation, e.what());
  }

  for (const etss::Share& sh : shares) {
    if (sh.t == new_index)
      return fail_with(kExitValidation,
                       "participant " + std::to_string(new_index) + " already holds a share");
  }

  try {
    etss::Dealer dealer = etss::Dealer::recover(params, shares, seed);
    const etss::Share share = dealer.issue(new_index);
    write_file_atomically(out_file, etss::format_share_record(share) + "\n");
    std::cout << out_file << "\n";
    return 0;
  } catch (const etss::Error& e) {
    switch (e.code()) {
      case etss::ErrorCode::DuplicateParticipant:
      case etss::ErrorCode::CodecMiss:
      case etss::ErrorCode::OutOfDomain:
        return fail_with(kExitValidation, e.what());
      default:
        return fail_with(kExitInconsistentShares, e.what());
    }
  }
}

// Published bounds for other evolving-threshold constructions, shown for
// side-by-side reading only; this tool never recomputes them.
constexpr const char* kReferenceBounds =
    "# reference bounds from the literature (t-th share, l-symbol secret):\n"
    "#   Komargodski-Naor-Yogev, k=2:  lg t + (l+1) lg lg t + 4l + 1 bits\n"
    "#   Komargodski-Naor-Yogev, k>=2: (k-1) lg t + 6 k^4 l lg lg t lg lg lg t"
    " + 7 k^4 l lg k bits\n"
    "#   D'Arco et al., k=3 (CRT):     (4/3) lg t + c (log_4 lg t)^2"
    " + lg p log_4 lg t bits\n"
    "#   Okamura-Koga, k=2, p-ary:     (floor(log_p t) + 2 floor(log_p(floor(log_p t)+1))"
    " + 2) * max{ceil(lg(p+1)), l} bits\n";

int cmd_sizes(std::uint32_t p, const std::vector<std::uint32_t>& ks, std::uint64_t t_min,
              std::uint64_t t_max, std::uint32_t ell,
              const std::vector<std::string>& codec_names, const std::string& code_table,
              bool bits, const std::string& csv_path, bool reference) {
  try {
    if (reference) std::cout << kReferenceBounds;
    if (t_min < 1 || t_max < t_min) return fail_with(kExitValidation, "bad t range");
    std::vector<etss::Codec> codecs;
    for (const std::string& name : codec_names) {
      const std::uint32_t cp = (name == "gamma" || name == "delta") ? 2 : p;
      codecs.push_back(build_codec(name, cp, name == "custom" ? code_table : ""));
    }
    if (codecs.empty()) return fail_with(kExitValidation, "no codecs requested");
    std::vector<std::uint64_t> ts;
    for (std::uint64_t t = t_min; t <= t_max; ++t) ts.push_back(t);
    const std::string csv = etss::emit_table(ks, ts, ell, codecs, bits);
    if (csv_path.empty()) {
      std::cout << csv;
    } else {
      write_file_atomically(csv_path, csv);
    }
    return 0;
  } catch (const etss::Error& e) {
    return fail_with(kExitValidation, e.what());
  }
}

int cmd_verify_secrecy(const SchemeFlags& flags, const std::string& secret0,
                       const std::string& secret1,
                       const std::vector<std::uint64_t>& coalition,
                       std::uint64_t budget, const std::string& csv_path,
                       bool as_json) {
  try {
    const etss::SchemeParams params = flags.params();
    const etss::Secret s0 = etss::Secret::from_digits(params.p, secret0);
    const etss::Secret s1 = etss::Secret::from_digits(params.p, secret1);
    const etss::ShareDistribution d0 =
        etss::enumerate_distribution(params, s0, coalition, budget);
    const etss::ShareDistribution d1 =
        etss::enumerate_distribution(params, s1, coalition, budget);
    const bool secure = d0 == d1;

    if (!csv_path.empty()) write_file_atomically(csv_path, etss::secrecy_csv(d0, d1));

    if (as_json) {
      json out;
      out["secure"] = secure;
      out["p"] = params.p;
      out["k"] = params.k;
      out["l"] = params.ell;
      out["codec"] = params.codec.name();
      out["coalition"] = coalition;
      out["secret0"] = secret0;
      out["secret1"] = secret1;
      out["states_per_secret"] = d0.total();
      out["distinct_tuples"] = d0.support();
      std::cout << out.dump() << "\n";
    } else if (secure) {
      std::cout << "secure: coalition distributions identical across "
                << d0.total() << " randomness states per secret\n";
    } else {
      std::cout << "INSECURE: coalition distributions differ between the two secrets\n";
    }
    return secure ? 0 : 1;
  } catch (const etss::Error& e) {
    return fail_with(kExitValidation, e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evolving k-threshold secret sharing over truncated polynomial rings"};
  app.require_subcommand(1);

  // split
  auto* split = app.add_subcommand("split", "issue shares for a list of participants");
  SchemeFlags split_flags;
  split_flags.attach(split);
  std::string secret_digits;
  std::vector<std::uint64_t> indices;
  std::uint64_t seed = 0;
  std::string fixed_randomness;
  std::string out_dir = ".";
  split->add_option("--secret", secret_digits, "secret digits, x^0 first")->required();
  split->add_option("--indices", indices, "participant indices")
      ->required()
      ->delimiter(',');
  auto* seed_opt = split->add_option("--seed", seed, "RNG seed (required unless --fix-randomness)");
  split->add_option("--fix-randomness", fixed_randomness,
                    "comma-separated r_j digit strings (test hook)");
  split->add_option("--out-dir", out_dir, "output directory");

  // combine
  auto* combine = app.add_subcommand("combine", "reconstruct the secret from k share files");
  std::vector<std::string> combine_files;
  combine->add_option("files", combine_files, "share files")->required();

  // add-participant
  auto* addp = app.add_subcommand("add-participant",
                                  "recover the dealer from k shares and issue a new one");
  SchemeFlags addp_flags;
  addp_flags.attach(addp, /*with_params=*/false);
  std::vector<std::string> addp_files;
  std::uint64_t new_index = 0;
  std::uint64_t addp_seed = 0;
  std::string addp_out = "new_share.etss";
  addp->add_option("files", addp_files, "existing share files")->required();
  addp->add_option("--new-index", new_index, "index of the joining participant")->required();
  addp->add_option("--seed", addp_seed, "RNG seed for fresh randomness")->required();
  addp->add_option("--out", addp_out, "output share file");

  // sizes
  auto* sizes = app.add_subcommand("sizes", "closed-form share sizes as CSV");
  std::uint32_t sizes_p = 2;
  std::vector<std::uint32_t> sizes_k{2};
  std::uint64_t t_min = 1, t_max = 64;
  std::uint32_t sizes_ell = 1;
  std::vector<std::string> sizes_codecs{"gamma", "delta"};
  std::string sizes_table;
  bool sizes_bits = false;
  bool sizes_reference = false;
  std::string sizes_csv;
  sizes->add_option("--p", sizes_p, "alphabet size for m1/m2/custom");
  sizes->add_option("--k", sizes_k, "threshold values")->delimiter(',');
  sizes->add_option("--t-min", t_min, "first participant index");
  sizes->add_option("--t-max", t_max, "last participant index");
  sizes->add_option("--l", sizes_ell, "secret length in symbols");
  sizes->add_option("--codecs", sizes_codecs, "codec names")->delimiter(',');
  sizes->add_option("--code-table", sizes_table, "table file when codecs include custom");
  sizes->add_flag("--bits", sizes_bits, "report bits (symbols times ceil(lg p))");
  sizes->add_flag("--reference", sizes_reference,
                  "also print published bounds of other constructions");
  sizes->add_option("--csv", sizes_csv, "write CSV here instead of stdout");

  // verify-secrecy
  auto* verify = app.add_subcommand("verify-secrecy",
                                    "exhaustive coalition-distribution equality check");
  SchemeFlags verify_flags;
  verify_flags.attach(verify);
  std::string secret0, secret1;
  std::vector<std::uint64_t> coalition;
  std::uint64_t budget = etss::kDefaultSecrecyBudget;
  std::string verify_csv;
  bool verify_json = false;
  verify->add_option("--secret0", secret0, "first secret")->required();
  verify->add_option("--secret1", secret1, "second secret")->required();
  verify->add_option("--coalition", coalition, "coalition indices (size < k)")
      ->delimiter(',');
  verify->add_option("--budget", budget, "max enumeration states");
  verify->add_option("--csv", verify_csv, "write per-tuple counts here");
  verify->add_flag("--json", verify_json, "machine-parsable verdict");

  CLI11_PARSE(app, argc, argv);

  if (split->parsed())
    return cmd_split(split_flags, secret_digits, indices, seed, seed_opt->count() > 0,
                     fixed_randomness, out_dir);
  if (combine->parsed()) return cmd_combine(combine_files);
  if (addp->parsed())
    return cmd_add_participant(addp_flags, addp_files, new_index, addp_seed, addp_out);
  if (sizes->parsed())
    return cmd_sizes(sizes_p, sizes_k, t_min, t_max, sizes_ell, sizes_codecs,
                     sizes_table, sizes_bits, sizes_csv, sizes_reference);
  if (verify->parsed())
    return cmd_verify_secrecy(verify_flags, secret0, secret1, coalition, budget,
                              verify_csv, verify_json);
  return 1;
}
