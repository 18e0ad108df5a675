#include "etss/prefix_code.hpp"

#include <algorithm>
#include <sstream>

namespace etss {

namespace {

// p-ary expansion of t >= 1, most significant symbol first.
std::vector<std::uint32_t> expansion(std::uint64_t t, std::uint32_t p) {
  std::vector<std::uint32_t> out;
  while (t > 0) {
    out.push_back(std::uint32_t(t % p));
    t /= p;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_prefix(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() > b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

std::uint32_t floor_log(std::uint64_t t, std::uint32_t p) {
  if (t < 1) fail(ErrorCode::OutOfDomain, "t must be positive");
  std::uint32_t e = 0;
  while (t >= p) {
    t /= p;
    ++e;
  }
  return e;
}

TruncatedPoly Codeword::to_poly() const {
  if (symbols.empty()) fail(ErrorCode::Malformed, "empty codeword");
  for (std::uint32_t s : symbols) {
    if (s >= p) fail(ErrorCode::SymbolOutOfRange, "symbol exceeds alphabet");
  }
  return TruncatedPoly(p, symbols);
}

Codec Codec::gamma() { return Codec(CodecKind::Gamma, 2); }
Codec Codec::delta() { return Codec(CodecKind::Delta, 2); }

Codec Codec::m1(std::uint32_t p) {
  if (p < 2) fail(ErrorCode::OutOfDomain, "alphabet needs at least two symbols");
  return Codec(CodecKind::M1, p);
}

Codec Codec::m2(std::uint32_t p) {
  if (p < 2) fail(ErrorCode::OutOfDomain, "alphabet needs at least two symbols");
  return Codec(CodecKind::M2, p);
}

Codec Codec::custom(std::uint32_t p,
                    const std::vector<std::pair<std::uint64_t, std::string>>& rows) {
  if (p < 2) fail(ErrorCode::OutOfDomain, "alphabet needs at least two symbols");
  auto table = std::make_shared<std::map<std::uint64_t, Codeword>>();
  for (const auto& [t, digits] : rows) {
    if (t < 1) fail(ErrorCode::BadTable, "indices start at 1");
    Codeword cw{p, parse_symbols(p, digits)};
    if (!table->emplace(t, std::move(cw)).second)
      fail(ErrorCode::BadTable, "duplicate index " + std::to_string(t));
  }
  if (table->empty()) fail(ErrorCode::BadTable, "empty code table");
  // Pairwise prefix check; tables are small enough that a trie buys nothing.
  for (auto i = table->begin(); i != table->end(); ++i) {
    for (auto j = std::next(i); j != table->end(); ++j) {
      if (is_prefix(i->second.symbols, j->second.symbols) ||
          is_prefix(j->second.symbols, i->second.symbols))
        fail(ErrorCode::BadTable, "table is not prefix-free (" + std::to_string(i->first) +
                                      ", " + std::to_string(j->first) + ")");
    }
  }
  Codec codec(CodecKind::Custom, p);
  codec.table_ = std::move(table);
  return codec;
}

Codec Codec::custom_from_table(std::uint32_t p, std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::string>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      fail(ErrorCode::BadTable, "line " + std::to_string(lineno) + ": expected t<TAB>codeword");
    std::uint64_t t = 0;
    try {
      t = std::stoull(line.substr(0, tab));
    } catch (const std::exception&) {
      fail(ErrorCode::BadTable, "line " + std::to_string(lineno) + ": bad index");
    }
    rows.emplace_back(t, line.substr(tab + 1));
  }
  return custom(p, rows);
}

Codec Codec::builtin(const std::string& name, std::uint32_t p) {
  if (name == "gamma") {
    if (p != 2) fail(ErrorCode::ParamMismatch, "gamma is a binary code");
    return gamma();
  }
  if (name == "delta") {
    if (p != 2) fail(ErrorCode::ParamMismatch, "delta is a binary code");
    return delta();
  }
  if (name == "m1") return m1(p);
  if (name == "m2") return m2(p);
  fail(ErrorCode::OutOfDomain, "unknown codec '" + name + "'");
}

std::string Codec::name() const {
  switch (kind_) {
    case CodecKind::Gamma: return "gamma";
    case CodecKind::Delta: return "delta";
    case CodecKind::M1: return "m1";
    case CodecKind::M2: return "m2";
    case CodecKind::Custom: return "custom";
  }
  return "?";
}

bool Codec::covers(std::uint64_t t) const {
  if (t < 1) return false;
  if (kind_ == CodecKind::Custom) return table_->count(t) != 0;
  return true;
}

Codeword Codec::encode(std::uint64_t t) const {
  if (t < 1) fail(ErrorCode::OutOfDomain, "t must be positive");
  switch (kind_) {
    case CodecKind::Gamma:
    case CodecKind::M1: {
      // floor(log_p t) zeros, then the p-ary expansion.
      Codeword cw{p_, std::vector<std::uint32_t>(floor_log(t, p_), 0)};
      const auto body = expansion(t, p_);
      cw.symbols.insert(cw.symbols.end(), body.begin(), body.end());
      return cw;
    }
    case CodecKind::Delta: {
      // gamma(floor(lg t)+1), then the binary expansion without its
      // leading bit.
      Codec g = gamma();
      Codeword cw = g.encode(std::uint64_t(floor_log(t, 2)) + 1);
      const auto body = expansion(t, 2);
      cw.symbols.insert(cw.symbols.end(), body.begin() + 1, body.end());
      return cw;
    }
    case CodecKind::M2: {
      // m1(floor(log_p t)+1), then the full p-ary expansion.
      Codeword cw = m1(p_).encode(std::uint64_t(floor_log(t, p_)) + 1);
      const auto body = expansion(t, p_);
      cw.symbols.insert(cw.symbols.end(), body.begin(), body.end());
      return cw;
    }
    case CodecKind::Custom: {
      auto it = table_->find(t);
      if (it == table_->end())
        fail(ErrorCode::OutOfDomain, "index " + std::to_string(t) + " not in code table");
      return it->second;
    }
  }
  fail(ErrorCode::OutOfDomain, "bad codec");
}

std::size_t Codec::code_length(std::uint64_t t) const {
  if (t < 1) fail(ErrorCode::OutOfDomain, "t must be positive");
  switch (kind_) {
    case CodecKind::Gamma:
      return 2 * std::size_t(floor_log(t, 2)) + 1;
    case CodecKind::Delta: {
      const std::size_t lg = floor_log(t, 2);
      return lg + 2 * std::size_t(floor_log(lg + 1, 2)) + 1;
    }
    case CodecKind::M1:
      return 2 * std::size_t(floor_log(t, p_)) + 1;
    case CodecKind::M2: {
      const std::size_t lg = floor_log(t, p_);
      return lg + 2 * std::size_t(floor_log(lg + 1, p_)) + 2;
    }
    case CodecKind::Custom:
      return encode(t).length();
  }
  fail(ErrorCode::OutOfDomain, "bad codec");
}

namespace {

std::uint64_t push_symbol(std::uint64_t t, std::uint32_t s, std::uint32_t p) {
  if (s >= p) fail(ErrorCode::SymbolOutOfRange, "symbol exceeds alphabet");
  if (t > (UINT64_MAX - s) / p) fail(ErrorCode::Malformed, "decoded value overflows");
  return t * p + s;
}

// Reads floor_log-style prefixes: z zeros, then z+1 symbols interpreted in
// base p (the symbol at the zero/nonzero boundary is the leading digit).
std::pair<std::uint64_t, std::size_t> decode_m1(std::span<const std::uint32_t> stream,
                                                std::uint32_t p) {
  std::size_t z = 0;
  while (z < stream.size() && stream[z] == 0) ++z;
  if (z == stream.size()) fail(ErrorCode::Truncated, "stream ends inside zero run");
  if (z > 63) fail(ErrorCode::Malformed, "zero run too long");
  const std::size_t total = 2 * z + 1;
  if (stream.size() < total) fail(ErrorCode::Truncated, "stream ends inside codeword");
  std::uint64_t t = 0;
  for (std::size_t i = z; i < total; ++i) t = push_symbol(t, stream[i], p);
  return {t, total};
}

}  // namespace

std::pair<std::uint64_t, std::size_t> Codec::decode(
    std::span<const std::uint32_t> stream) const {
  if (stream.empty()) fail(ErrorCode::Truncated, "empty stream");
  switch (kind_) {
    case CodecKind::Gamma:
    case CodecKind::M1:
      return decode_m1(stream, p_);
    case CodecKind::Delta: {
      const auto [len, used] = decode_m1(stream, 2);
      if (len < 1 || len > 63) fail(ErrorCode::Malformed, "implausible expansion length");
      const std::size_t mantissa = std::size_t(len) - 1;
      if (stream.size() < used + mantissa)
        fail(ErrorCode::Truncated, "stream ends inside mantissa");
      std::uint64_t t = 1;
      for (std::size_t i = 0; i < mantissa; ++i) {
        if (stream[used + i] >= 2) fail(ErrorCode::SymbolOutOfRange, "binary symbol expected");
        t = (t << 1) | stream[used + i];
      }
      return {t, used + mantissa};
    }
    case CodecKind::M2: {
      const auto [len, used] = decode_m1(stream, p_);
      if (len < 1 || len > 64) fail(ErrorCode::Malformed, "implausible expansion length");
      if (stream.size() < used + len) fail(ErrorCode::Truncated, "stream ends inside mantissa");
      if (stream[used] == 0) fail(ErrorCode::Malformed, "expansion has a leading zero");
      std::uint64_t t = 0;
      for (std::size_t i = 0; i < len; ++i) t = push_symbol(t, stream[used + i], p_);
      return {t, used + std::size_t(len)};
    }
    case CodecKind::Custom: {
      for (const auto& [t, cw] : *table_) {
        if (cw.symbols.size() <= stream.size() &&
            std::equal(cw.symbols.begin(), cw.symbols.end(), stream.begin()))
          return {t, cw.symbols.size()};
        // A table word extending the stream means we ran out mid-codeword.
      }
      for (const auto& [t, cw] : *table_) {
        if (stream.size() < cw.symbols.size() &&
            std::equal(stream.begin(), stream.end(), cw.symbols.begin()))
          fail(ErrorCode::Truncated, "stream ends inside codeword");
      }
      fail(ErrorCode::Malformed, "no codeword matches the stream");
    }
  }
  fail(ErrorCode::Malformed, "bad codec");
}

std::vector<std::uint64_t> Codec::domain() const {
  std::vector<std::uint64_t> out;
  if (kind_ == CodecKind::Custom) {
    out.reserve(table_->size());
    for (const auto& [t, cw] : *table_) out.push_back(t);
  }
  return out;
}

bool verify_prefix_free(const Codec& codec, std::uint64_t max_t) {
  if (max_t < 1) fail(ErrorCode::OutOfDomain, "max_t must be positive");
  // Trie over the codewords; a violation is an insert that passes through
  // or lands on a terminal node.
  struct Node {
    std::map<std::uint32_t, std::size_t> next;
    bool terminal = false;
  };
  std::vector<Node> trie(1);
  auto insert = [&trie](const std::vector<std::uint32_t>& word) {
    std::size_t cur = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (trie[cur].terminal) return false;  // existing word is our prefix
      auto it = trie[cur].next.find(word[i]);
      if (it == trie[cur].next.end()) {
        trie.push_back(Node{});
        it = trie[cur].next.emplace(word[i], trie.size() - 1).first;
      }
      cur = it->second;
    }
    if (trie[cur].terminal || !trie[cur].next.empty()) return false;
    trie[cur].terminal = true;
    return true;
  };
  if (codec.kind() == CodecKind::Custom) {
    for (std::uint64_t t : codec.domain()) {
      if (t > max_t) continue;
      if (!insert(codec.encode(t).symbols)) return false;
    }
    return true;
  }
  for (std::uint64_t t = 1; t <= max_t; ++t) {
    if (!insert(codec.encode(t).symbols)) return false;
  }
  return true;
}

}  // namespace etss
