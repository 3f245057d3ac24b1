#include "bsva/words.hpp"

#include <omp.h>

#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace bsva {

namespace {

constexpr long kMaxBExponent = 1000000;  // b^k expands into k letters

void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (l.kind == Letter::APow && l.exp == 0) return;
  if (!out.empty()) {
    Letter& back = out.back();
    if (back.kind == Letter::APow && l.kind == Letter::APow) {
      back.exp += l.exp;
      if (back.exp == 0) out.pop_back();
      return;
    }
    if (back.kind == Letter::B && l.kind == Letter::B && back.exp == -l.exp) {
      out.pop_back();
      return;
    }
  }
  out.push_back(l);
}

}  // namespace

Word free_reduce(std::vector<Letter> raw) {
  return Word::from_letters(std::move(raw));
}

Word Word::from_letters(std::vector<Letter> raw) {
  Word w;
  w.ls_.reserve(raw.size());
  for (auto& l : raw) push_reduced(w.ls_, l);
  return w;
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> raw;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == 'e' ) {
    std::size_t j = i + 1;
    while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\n')) ++j;
    if (j == text.size()) return Word{};
  }
  while (i < text.size()) {
    char c = text[i];
    if (c != 'a' && c != 'A' && c != 'b' && c != 'B')
      throw invalid_params(std::string("unexpected character '") + c + "' in word");
    ++i;
    BigInt k(1);
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
      if (i == start || (i == start + 1 && !(text[start] >= '0' && text[start] <= '9')))
        throw invalid_params("malformed exponent in word");
      k = BigInt(std::string(text.substr(start, i - start)));
    }
    if (c == 'a' || c == 'A') {
      raw.push_back(Letter::a(c == 'a' ? k : BigInt(-k)));
    } else {
      int eps = (c == 'b') ? 1 : -1;
      if (k < 0) {
        eps = -eps;
        k = -k;
      }
      if (k > kMaxBExponent) throw invalid_params("b exponent too large");
      for (long j = 0; j < k.get_si(); ++j) raw.push_back(Letter::b(eps));
    }
    skip_ws();
  }
  return from_letters(std::move(raw));
}

Word Word::inverse() const {
  std::vector<Letter> raw;
  raw.reserve(ls_.size());
  for (auto it = ls_.rbegin(); it != ls_.rend(); ++it)
    raw.push_back(Letter{it->kind, -it->exp});
  return from_letters(std::move(raw));
}

std::string Word::str() const {
  if (ls_.empty()) return "e";
  std::string out;
  for (const auto& l : ls_) {
    if (!out.empty()) out += ' ';
    if (l.kind == Letter::B) {
      out += (l.exp > 0) ? "b" : "B";
    } else if (l.exp == 1) {
      out += "a";
    } else if (l.exp == -1) {
      out += "A";
    } else {
      out += "a^" + l.exp.get_str();
    }
  }
  return out;
}

Word operator*(const Word& x, const Word& y) {
  std::vector<Letter> raw = x.ls_;
  raw.insert(raw.end(), y.ls_.begin(), y.ls_.end());
  return Word::from_letters(std::move(raw));
}

Word NormalForm::to_word() const {
  std::vector<Letter> raw;
  if (z != 0) raw.push_back(Letter::a(z));
  for (const auto& s : syllables) {
    raw.push_back(Letter::b(s.eps));
    if (s.r != 0) raw.push_back(Letter::a(s.r));
  }
  return Word::from_letters(std::move(raw));
}

Word britton_reduce(const BsParams& p, const Word& w, PinchStrategy s) {
  std::vector<Letter> ls = w.letters();
  const BigInt n = to_bigint(p.n), m = to_bigint(p.m);
  for (;;) {
    long long pos = -1;
    for (std::size_t i = 0; i + 2 < ls.size(); ++i) {
      if (ls[i].kind != Letter::B || ls[i + 1].kind != Letter::APow || ls[i + 2].kind != Letter::B)
        continue;
      if (ls[i].exp != -ls[i + 2].exp) continue;
      const BigInt& d = (ls[i].exp > 0) ? n : m;
      if (!mpz_divisible_p(ls[i + 1].exp.get_mpz_t(), d.get_mpz_t())) continue;
      pos = static_cast<long long>(i);
      if (s == PinchStrategy::Leftmost) break;
    }
    if (pos < 0) return Word::from_letters(std::move(ls));
    std::size_t i = static_cast<std::size_t>(pos);
    BigInt t;
    if (ls[i].exp > 0) {
      mpz_divexact(t.get_mpz_t(), ls[i + 1].exp.get_mpz_t(), n.get_mpz_t());
      t *= m;
    } else {
      mpz_divexact(t.get_mpz_t(), ls[i + 1].exp.get_mpz_t(), m.get_mpz_t());
      t *= n;
    }
    std::vector<Letter> next(ls.begin(), ls.begin() + i);
    std::vector<Letter> rest;
    rest.push_back(Letter::a(t));
    rest.insert(rest.end(), ls.begin() + i + 3, ls.end());
    Word rebuilt = Word::from_letters(std::move(next)) * Word::from_letters(std::move(rest));
    ls = rebuilt.letters();
  }
}

NormalForm normal_form(const BsParams& p, const Word& w) {
  const BigInt n = to_bigint(p.n), m = to_bigint(p.m), am = to_bigint(p.abs_m());
  std::deque<Syllable> syl;
  BigInt z(0);
  // Right-to-left sweep: prepending a letter to an already-canonical suffix
  // needs at most one division and one pinch.
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    if (it->kind == Letter::APow) {
      z += it->exp;
      continue;
    }
    const int eps = static_cast<int>(it->exp.get_si());
    BigInt r, lead;
    if (eps > 0) {
      mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), n.get_mpz_t());  // 0 <= r < n
      lead = (z - r) / n * m;
      if (r == 0 && !syl.empty() && syl.front().eps == -1) {
        z = lead + syl.front().r;
        syl.pop_front();
      } else {
        syl.push_front(Syllable{+1, r});
        z = lead;
      }
    } else {
      mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), am.get_mpz_t());  // 0 <= r < |m|
      BigInt q;
      mpz_divexact(q.get_mpz_t(), BigInt(z - r).get_mpz_t(), m.get_mpz_t());
      lead = q * n;
      if (r == 0 && !syl.empty() && syl.front().eps == +1) {
        z = lead + syl.front().r;
        syl.pop_front();
      } else {
        syl.push_front(Syllable{-1, r});
        z = lead;
      }
    }
  }
  return NormalForm{z, {syl.begin(), syl.end()}};
}

NormalForm normal_form_via(const BsParams& p, const Word& w, PinchStrategy s) {
  return normal_form(p, britton_reduce(p, w, s));
}

NormalForm multiply(const BsParams& p, const Word& x, const Word& y) {
  return normal_form(p, x * y);
}

bool is_identity(const BsParams& p, const Word& w) {
  return normal_form(p, w).is_identity();
}

bool words_equal(const BsParams& p, const Word& x, const Word& y) {
  return normal_form(p, x) == normal_form(p, y);
}

std::pair<Rational, Rational> affine_image(const BsParams& p, const Word& w) {
  const Rational slope(to_bigint(p.m), to_bigint(p.n));
  Rational u(1), v(0);
  for (const auto& l : w.letters()) {
    // (u, v) o (u', v') = (u u', u v' + v)
    if (l.kind == Letter::APow) {
      v = v + u * Rational(l.exp);
    } else {
      u = u * (l.exp > 0 ? slope : slope.reciprocal());
    }
  }
  return {u, v};
}

std::optional<BigInt> in_power_subgroup(const BsParams& p, const Word& w, const BigInt& d) {
  if (d < 1) throw invalid_params("in_power_subgroup requires d >= 1");
  NormalForm nf = normal_form(p, w);
  if (!nf.syllables.empty()) return std::nullopt;
  if (!mpz_divisible_p(nf.z.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
  return BigInt(nf.z / d);
}

std::size_t conjugate_count(const BsParams& p, const Word& gamma, int len) {
  if (len < 0) throw invalid_params("conjugate_count requires len >= 0");
  const Word a = Word::parse("a");
  const Word c = Word::parse("B a b");
  const std::vector<Word> gens = {a, a.inverse(), c, c.inverse()};

  std::unordered_set<std::string> seen;
  std::vector<Word> elements;
  seen.insert(normal_form(p, Word{}).str());
  elements.push_back(Word{});
  std::vector<Word> frontier = {Word{}};
  for (int step = 0; step < len; ++step) {
    std::vector<Word> next;
    for (const auto& g : frontier) {
      for (const auto& h : gens) {
        Word u = normal_form(p, g * h).to_word();
        if (seen.insert(u.str()).second) {
          next.push_back(u);
          elements.push_back(u);
        }
      }
    }
    frontier = std::move(next);
  }

  std::unordered_set<std::string> conj;
  for (const auto& g : elements)
    conj.insert(normal_form(p, g * gamma * g.inverse()).str());
  return conj.size();
}

std::vector<NormalForm> normal_form_batch(const BsParams& p, const std::vector<Word>& ws, int jobs) {
  std::vector<NormalForm> out(ws.size());
  if (jobs < 1) jobs = 1;
#pragma omp parallel for schedule(dynamic, 64) num_threads(jobs)
  for (long long i = 0; i < static_cast<long long>(ws.size()); ++i)
    out[static_cast<std::size_t>(i)] = normal_form(p, ws[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace bsva
