#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "quiverspec/color.hpp"
#include "quiverspec/rational.hpp"

namespace quiverspec {

/// A truncated element of the formal monoid algebra over color words, with
/// exact rational coefficients. `bound() == nullopt` means the element is
/// exact (a polynomial); `bound() == D` means coefficients are correct for
/// all words of length <= D and unknown beyond. Zero coefficients are never
/// stored, and a bounded series never stores words longer than its bound.
class Series {
  public:
    using TermMap = std::map<Word, Rational, WordLess>;

    Series() = default;

    static Series zero() { return Series(); }

    static Series one() { return monomial(Word{}, Rational(1)); }

    static Series constant(const Rational& r) { return monomial(Word{}, r); }

    static Series monomial(Word w, const Rational& coeff) {
        Series f;
        if (coeff != 0) f.terms_.emplace(std::move(w), coeff);
        return f;
    }

    static Series letter(const ColorId& c) { return monomial(Word{c}, Rational(1)); }

    const TermMap& terms() const { return terms_; }
    const std::optional<unsigned>& bound() const { return bound_; }
    bool is_exact() const { return !bound_.has_value(); }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const Word& w) const {
        const auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds `delta * w`, dropping the term if it cancels or exceeds the bound.
    void add_term(const Word& w, const Rational& delta) {
        if (delta == 0) return;
        if (bound_ && w.size() > *bound_) return;
        auto [it, inserted] = terms_.emplace(w, delta);
        if (!inserted) {
            it->second += delta;
            if (it->second == 0) terms_.erase(it);
        }
    }

    void set_bound(std::optional<unsigned> bound) {
        bound_ = bound;
        if (!bound_) return;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.size() > *bound_)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    std::set<Word, WordLess> support() const {
        std::set<Word, WordLess> s;
        for (const auto& [w, c] : terms_) s.insert(w);
        return s;
    }

    std::size_t max_word_length() const {
        std::size_t len = 0;
        for (const auto& [w, c] : terms_) len = std::max(len, w.size());
        return len;
    }

    /// Word length past which this series tells us nothing: the bound for
    /// truncated series, the longest supported word for exact ones. Used for
    /// action budget checks.
    std::size_t word_budget() const { return bound_ ? *bound_ : max_word_length(); }

    friend bool operator==(const Series& a, const Series& b) {
        return a.bound_ == b.bound_ && a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            if (!first) out += " + ";
            first = false;
            out += rational_str(c) + "*" + word_str(w);
        }
        return out;
    }

  private:
    TermMap terms_;
    std::optional<unsigned> bound_; // nullopt = exact
};

inline std::optional<unsigned> min_bound(const std::optional<unsigned>& a,
                                         const std::optional<unsigned>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

inline Series add(const Series& f, const Series& g) {
    Series out;
    out.set_bound(min_bound(f.bound(), g.bound()));
    for (const auto& [w, c] : f.terms()) out.add_term(w, c);
    for (const auto& [w, c] : g.terms()) out.add_term(w, c);
    return out;
}

inline Series scale(const Rational& lambda, const Series& f) {
    Series out;
    out.set_bound(f.bound());
    for (const auto& [w, c] : f.terms()) out.add_term(w, lambda * c);
    return out;
}

inline Series negate(const Series& f) { return scale(Rational(-1), f); }

inline Series sub(const Series& f, const Series& g) { return add(f, negate(g)); }

/// Noncommutative convolution: the coefficient of a word is the sum over
/// its two-factor splittings. The result bound is the minimum of the
/// operand bounds (exact times exact stays exact).
inline Series mul(const Series& f, const Series& g) {
    Series out;
    const auto bound = min_bound(f.bound(), g.bound());
    out.set_bound(bound);
    for (const auto& [wf, cf] : f.terms())
        for (const auto& [wg, cg] : g.terms()) {
            if (bound && wf.size() + wg.size() > *bound) continue;
            out.add_term(word_concat(wf, wg), cf * cg);
        }
    return out;
}

inline std::set<Word, WordLess> support(const Series& f) { return f.support(); }

/// Drops words longer than D; the result is bounded by min(D, old bound).
inline Series truncate(const Series& f, unsigned d) {
    Series out;
    out.set_bound(min_bound(d, f.bound()));
    for (const auto& [w, c] : f.terms()) out.add_term(w, c);
    return out;
}

} // namespace quiverspec
