#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bsva/rational.hpp"

namespace bsva {

// Parameters of the group <a, b | b a^n b^-1 = a^m>. The group is
// well-defined for any nonzero n, m; is_standard() marks 2 <= n < |m|,
// the range the relation and type machinery is built for.
struct BsParams {
  long long n;
  long long m;

  BsParams(long long n_, long long m_) : n(n_), m(m_) {
    if (n == 0 || m == 0) throw invalid_params("group parameters must be nonzero");
  }
  long long abs_m() const { return m < 0 ? -m : m; }
  bool is_standard() const { return n >= 2 && n < abs_m(); }
};

// One letter: a^exp (exp != 0) or b^eps (eps = +1 or -1, stored in exp).
struct Letter {
  enum Kind : std::uint8_t { APow, B };
  Kind kind;
  BigInt exp;

  static Letter a(BigInt k) { return Letter{APow, std::move(k)}; }
  static Letter b(int eps) { return Letter{B, BigInt(eps)}; }
  friend bool operator==(const Letter& x, const Letter& y) {
    return x.kind == y.kind && x.exp == y.exp;
  }
};

// Freely reduced word: no zero a-powers, no adjacent a-powers, no b b^-1.
class Word {
 public:
  Word() = default;
  static Word from_letters(std::vector<Letter> raw);  // free-reduces
  // Tokens a, A, b, B with optional ^<int>; whitespace optional. "e" or the
  // empty string is the identity. b-exponents expand into single letters.
  static Word parse(std::string_view text);

  const std::vector<Letter>& letters() const { return ls_; }
  bool empty() const { return ls_.empty(); }
  std::size_t size() const { return ls_.size(); }
  Word inverse() const;
  std::string str() const;

  friend Word operator*(const Word& x, const Word& y);
  friend bool operator==(const Word& x, const Word& y) { return x.ls_ == y.ls_; }

 private:
  std::vector<Letter> ls_;
};

struct Syllable {
  int eps;   // +1 or -1
  BigInt r;  // 0 <= r < n after b, 0 <= r < |m| after b^-1
  friend bool operator==(const Syllable& x, const Syllable& y) {
    return x.eps == y.eps && x.r == y.r;
  }
};

// Unique canonical form a^z b^{e1} a^{r1} ... b^{ek} a^{rk}. Britton-reduced:
// no syllable with r = 0 is followed by the opposite b-sign.
struct NormalForm {
  BigInt z;
  std::vector<Syllable> syllables;

  bool is_identity() const { return z == 0 && syllables.empty(); }
  Word to_word() const;
  std::string str() const { return to_word().str(); }
  friend bool operator==(const NormalForm& x, const NormalForm& y) {
    return x.z == y.z && x.syllables == y.syllables;
  }
};

enum class PinchStrategy { Leftmost, Rightmost };

Word free_reduce(std::vector<Letter> raw);

// Removes pinches b a^{kn} b^-1 -> a^{km} and b^-1 a^{km} b -> a^{kn} until
// none remain, picking the leftmost or rightmost applicable pinch each round.
Word britton_reduce(const BsParams& p, const Word& w, PinchStrategy s = PinchStrategy::Leftmost);

NormalForm normal_form(const BsParams& p, const Word& w);
// Same value, but forced through an explicit pinch-removal pass first; used
// to cross-check reduction strategies against each other.
NormalForm normal_form_via(const BsParams& p, const Word& w, PinchStrategy s);

NormalForm multiply(const BsParams& p, const Word& x, const Word& y);
bool is_identity(const BsParams& p, const Word& w);
bool words_equal(const BsParams& p, const Word& x, const Word& y);

// Image under a -> x + 1, b -> (m/n) x, composing letter images left to
// right; returns (u, v) for x -> u*x + v. Kills no nontrivial element, so a
// trivial image pins group identities independently of the reduction code.
std::pair<Rational, Rational> affine_image(const BsParams& p, const Word& w);

// If w = (a^d)^k returns k, otherwise nothing. Requires d >= 1.
std::optional<BigInt> in_power_subgroup(const BsParams& p, const Word& w, const BigInt& d);

// Distinct conjugates g gamma g^-1 with g a product of at most len letters
// from {a^{+-1}, (b^-1 a b)^{+-1}}, deduplicating elements breadth-first.
std::size_t conjugate_count(const BsParams& p, const Word& gamma, int len);

std::vector<NormalForm> normal_form_batch(const BsParams& p, const std::vector<Word>& ws, int jobs = 1);

}  // namespace bsva
