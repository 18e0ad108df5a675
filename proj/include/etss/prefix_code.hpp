#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "etss/ring_poly.hpp"

namespace etss {

// Prefix-free codeword over the alphabet {0,..,p-1}.
struct Codeword {
  std::uint32_t p = 2;
  std::vector<std::uint32_t> symbols;

  std::size_t length() const noexcept { return symbols.size(); }
  // y_t = sum_j c_j x^j in F_p[x]/x^len; the mapping is positional.
  TruncatedPoly to_poly() const;
  std::string digits() const { return format_symbols(p, symbols); }

  bool operator==(const Codeword& o) const noexcept {
    return p == o.p && symbols == o.symbols;
  }
};

enum class CodecKind { Gamma, Delta, M1, M2, Custom };

// Prefix-free integer codec. gamma/delta are the classic universal binary
// codes; m1/m2 are their p-ary analogues (m1 = floor(log_p t) zeros then the
// p-ary expansion; m2 recursively encodes the expansion length with m1 and
// keeps the full expansion, so it stays decodable for any alphabet).
// Custom codecs carry an explicit table, verified prefix-free at load.
class Codec {
 public:
  static Codec gamma();
  static Codec delta();
  static Codec m1(std::uint32_t p);
  static Codec m2(std::uint32_t p);
  static Codec custom(std::uint32_t p,
                      const std::vector<std::pair<std::uint64_t, std::string>>& rows);
  // One record per line: "t<TAB>codeword-digits". Blank lines ignored.
  static Codec custom_from_table(std::uint32_t p, std::istream& in);
  // Builds a builtin codec from its record name ("gamma", "delta", "m1", "m2").
  static Codec builtin(const std::string& name, std::uint32_t p);

  CodecKind kind() const noexcept { return kind_; }
  std::uint32_t alphabet() const noexcept { return p_; }
  std::string name() const;

  bool covers(std::uint64_t t) const;
  Codeword encode(std::uint64_t t) const;
  // Closed-form codeword length for builtins; table lookup for custom.
  std::size_t code_length(std::uint64_t t) const;

  // Decodes one codeword from the front of the stream; returns the integer
  // and the number of symbols consumed.
  std::pair<std::uint64_t, std::size_t> decode(std::span<const std::uint32_t> stream) const;

  // Indices in the custom table (empty for builtins).
  std::vector<std::uint64_t> domain() const;

 private:
  Codec(CodecKind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  CodecKind kind_;
  std::uint32_t p_;
  std::shared_ptr<const std::map<std::uint64_t, Codeword>> table_;  // custom only
};

// True iff no codeword for t <= max_t is a prefix of another (custom codecs
// check the listed indices up to max_t).
bool verify_prefix_free(const Codec& codec, std::uint64_t max_t);

// floor(log_p t) for t >= 1.
std::uint32_t floor_log(std::uint64_t t, std::uint32_t p);

}  // namespace etss
