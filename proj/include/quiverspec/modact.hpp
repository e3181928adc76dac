#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quiverspec/quiver.hpp"
#include "quiverspec/rational.hpp"
#include "quiverspec/series.hpp"

namespace quiverspec {

/// A finite formal sum of vertices with rational coefficients, bound to a
/// host quiver expression. Zero coefficients are never stored.
class ModuleElem {
  public:
    explicit ModuleElem(QuiverExprPtr host) : host_(std::move(host)) {}

    static ModuleElem zero(QuiverExprPtr host) { return ModuleElem(std::move(host)); }

    static ModuleElem unit(QuiverExprPtr host, const VertexAddr& v) {
        ModuleElem y(std::move(host));
        y.add(v, Rational(1));
        return y;
    }

    const QuiverExprPtr& host() const { return host_; }
    const std::map<VertexAddr, Rational>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Rational coeff(const VertexAddr& v) const {
        const auto it = coeffs_.find(v);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void add(const VertexAddr& v, const Rational& delta) {
        if (delta == 0) return;
        if (!valid_vertex_addr(*host_, v))
            throw InputError("'" + v.str() + "' is not a vertex of the host quiver");
        auto [it, inserted] = coeffs_.emplace(v, delta);
        if (!inserted) {
            it->second += delta;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    std::set<VertexAddr> support() const {
        std::set<VertexAddr> s;
        for (const auto& [v, c] : coeffs_) s.insert(v);
        return s;
    }

    unsigned max_level() const {
        unsigned m = 0;
        for (const auto& [v, c] : coeffs_) m = std::max(m, v.max_level());
        return m;
    }

    friend ModuleElem operator+(const ModuleElem& a, const ModuleElem& b) {
        require_same_host(a, b);
        ModuleElem out = a;
        for (const auto& [v, c] : b.coeffs_) out.add(v, c);
        return out;
    }

    friend ModuleElem operator-(const ModuleElem& a, const ModuleElem& b) {
        require_same_host(a, b);
        ModuleElem out = a;
        for (const auto& [v, c] : b.coeffs_) out.add(v, -c);
        return out;
    }

    friend ModuleElem operator*(const Rational& lambda, const ModuleElem& y) {
        ModuleElem out(y.host_);
        for (const auto& [v, c] : y.coeffs_) out.add(v, lambda * c);
        return out;
    }

    friend bool operator==(const ModuleElem& a, const ModuleElem& b) {
        return a.host_.get() == b.host_.get() && a.coeffs_ == b.coeffs_;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [v, c] : coeffs_) {
            if (!first) out += " + ";
            first = false;
            out += rational_str(c) + "*x(" + v.str() + ")";
        }
        return out;
    }

  private:
    static void require_same_host(const ModuleElem& a, const ModuleElem& b) {
        if (a.host_.get() != b.host_.get())
            throw InputError("module elements belong to different host quivers");
    }

    QuiverExprPtr host_;
    std::map<VertexAddr, Rational> coeffs_;
};

/// The right action y·f: sums lambda_w * mu_v over all paths with source v
/// in supp y and color word w in supp f. Exact for the infinite quiver;
/// refuses (rather than truncating) when supp y's levels plus the series'
/// word budget exceed the window.
inline ModuleElem act(const MaterializedQuiver& q, const ModuleElem& y, const Series& f) {
    if (q.expr().get() != y.host().get())
        throw InputError("module element host does not match the quiver");
    const unsigned long needed = static_cast<unsigned long>(y.max_level()) + f.word_budget();
    if (needed > q.budget())
        throw BudgetError("action needs a larger window", needed);

    ModuleElem out(y.host());
    for (const auto& [w, lambda] : f.terms()) {
        // One simultaneous forward sweep per word; multiplicities of equal
        // paths fold into the coefficients.
        std::map<VertexAddr, Rational> frontier;
        for (const auto& [v, mu] : y.terms()) frontier.emplace(v, mu);
        for (const auto& letter : w) {
            std::map<VertexAddr, Rational> next;
            for (const auto& [v, mu] : frontier)
                for (const auto& a : q.out_arrows(v, letter)) {
                    auto [it, inserted] = next.emplace(a.tgt, mu);
                    if (!inserted) it->second += mu;
                }
            frontier = std::move(next);
        }
        for (const auto& [v, mu] : frontier) out.add(v, lambda * mu);
    }
    return out;
}

inline void require_tilde_host(const ModuleElem& y) {
    if (!y.host()->is_tilde())
        throw InputError("operation requires a tilde-construction host quiver");
}

/// Smallest top level carrying support. Requires a tilde host and y != 0.
inline unsigned min_level(const ModuleElem& y) {
    require_tilde_host(y);
    if (y.is_zero()) throw InputError("min_level of the zero element");
    unsigned m = 0;
    bool first = true;
    for (const auto& [v, c] : y.terms()) {
        const unsigned lvl = v.top_level();
        if (first || lvl < m) m = lvl;
        first = false;
    }
    return m;
}

/// True iff every support vertex has top level >= i (vacuously for 0).
inline bool in_m_geq(const ModuleElem& y, unsigned i) {
    require_tilde_host(y);
    for (const auto& [v, c] : y.terms())
        if (v.top_level() < i) return false;
    return true;
}

/// Restriction of the coefficients to top level exactly i.
inline ModuleElem project_level(const ModuleElem& y, unsigned i) {
    require_tilde_host(y);
    ModuleElem out(y.host());
    for (const auto& [v, c] : y.terms())
        if (v.top_level() == i) out.add(v, c);
    return out;
}

/// Restriction of the coefficients to top level <= w.
inline ModuleElem project_level_leq(const ModuleElem& y, unsigned w) {
    require_tilde_host(y);
    ModuleElem out(y.host());
    for (const auto& [v, c] : y.terms())
        if (v.top_level() <= w) out.add(v, c);
    return out;
}

/// The level-shift embedding (j, v) -> (j+i, v).
inline ModuleElem shift(const ModuleElem& y, unsigned i) {
    require_tilde_host(y);
    ModuleElem out(y.host());
    for (const auto& [v, c] : y.terms()) out.add(v.with_top_level(v.top_level() + i), c);
    return out;
}

/// Row-reduced basis of a finitely generated submodule restricted to a
/// window. On tilde hosts the coordinates are additionally capped at a top
/// level, so the stored rows are the projections of the true submodule to
/// that sub-window.
class SpanBasis {
  public:
    SpanBasis(QuiverExprPtr host, std::vector<VertexAddr> coords,
              std::optional<unsigned> levelCap)
        : host_(std::move(host)), coords_(std::move(coords)), levelCap_(levelCap) {
        for (std::size_t i = 0; i < coords_.size(); ++i) index_.emplace(coords_[i], i);
    }

    const QuiverExprPtr& host() const { return host_; }
    const std::vector<VertexAddr>& coords() const { return coords_; }
    const std::optional<unsigned>& level_cap() const { return levelCap_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<Rational>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    std::vector<Rational> to_dense(const ModuleElem& y) const {
        std::vector<Rational> dense(coords_.size(), Rational(0));
        for (const auto& [v, c] : y.terms()) {
            const auto it = index_.find(v);
            if (it == index_.end())
                throw InputError("vertex '" + v.str() + "' is outside the span window");
            dense[it->second] = c;
        }
        return dense;
    }

    ModuleElem row_elem(std::size_t k) const {
        ModuleElem out(host_);
        for (std::size_t j = 0; j < coords_.size(); ++j)
            if (rows_[k][j] != 0) out.add(coords_[j], rows_[k][j]);
        return out;
    }

    /// Reduces `dense` in place against the basis; returns the coefficients
    /// used per row.
    std::vector<Rational> reduce(std::vector<Rational>& dense) const {
        std::vector<Rational> used(rows_.size(), Rational(0));
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Rational factor = dense[pivots_[k]];
            if (factor == 0) continue;
            used[k] = factor;
            for (std::size_t j = pivots_[k]; j < dense.size(); ++j)
                if (rows_[k][j] != 0) dense[j] -= factor * rows_[k][j];
        }
        return used;
    }

    /// Inserts a vector unless it is dependent; keeps reduced row-echelon
    /// form with pivots strictly increasing in canonical vertex order.
    bool insert(std::vector<Rational> dense) {
        reduce(dense);
        std::size_t pivot = dense.size();
        for (std::size_t j = 0; j < dense.size(); ++j)
            if (dense[j] != 0) {
                pivot = j;
                break;
            }
        if (pivot == dense.size()) return false;
        const Rational lead = dense[pivot];
        for (auto& x : dense) x /= lead;
        // Back-reduce existing rows at the new pivot column.
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Rational factor = rows_[k][pivot];
            if (factor == 0) continue;
            for (std::size_t j = 0; j < dense.size(); ++j)
                if (dense[j] != 0) rows_[k][j] -= factor * dense[j];
        }
        const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
        const std::size_t at = static_cast<std::size_t>(pos - pivots_.begin());
        pivots_.insert(pos, pivot);
        rows_.insert(rows_.begin() + at, std::move(dense));
        return true;
    }

  private:
    QuiverExprPtr host_;
    std::vector<VertexAddr> coords_;
    std::map<VertexAddr, std::size_t> index_;
    std::optional<unsigned> levelCap_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> pivots_;
};

/// Coefficients expressing z over the basis rows, or nullopt when z is not
/// in the span. z must live inside the basis window.
inline std::optional<std::vector<Rational>> membership(const ModuleElem& z, const SpanBasis& b) {
    auto dense = b.to_dense(z);
    auto used = b.reduce(dense);
    for (const auto& x : dense)
        if (x != 0) return std::nullopt;
    return used;
}

/// Row-reduced basis of span{ g·f : g generator, f word of length <= L },
/// computed as an orbit closure under single-color actions (the action is
/// linear, so acting on new basis directions per round reproduces the span
/// of all words of that length). On tilde hosts the rows are projected to
/// top level <= min_level(generators) + L; the projection commutes with
/// the action because no arrow lowers the top level.
inline SpanBasis cyclic_span(const MaterializedQuiver& q,
                             const std::vector<ModuleElem>& generators, unsigned spanLen) {
    std::vector<const ModuleElem*> nonzero;
    for (const auto& g : generators) {
        if (g.host().get() != q.expr().get())
            throw InputError("generator host does not match the quiver");
        if (!g.is_zero()) nonzero.push_back(&g);
    }

    std::optional<unsigned> levelCap;
    if (q.expr()->is_tilde() && !nonzero.empty()) {
        unsigned minLevel = nonzero.front()->max_level();
        for (const auto* g : nonzero) minLevel = std::min(minLevel, min_level(*g));
        levelCap = minLevel + spanLen;
    }

    std::vector<VertexAddr> coords;
    if (levelCap) {
        const std::size_t n = q.count_top_level_leq(*levelCap);
        coords.assign(q.vertices().begin(), q.vertices().begin() + n);
    } else {
        coords = q.vertices();
    }
    SpanBasis basis(q.expr(), std::move(coords), levelCap);
    if (nonzero.empty()) return basis;

    for (const auto* g : nonzero) {
        const unsigned long needed = static_cast<unsigned long>(g->max_level()) + spanLen;
        if (needed > q.budget())
            throw BudgetError("span construction needs a larger window", needed);
        for (const auto& [v, c] : g->terms())
            if (!q.contains(v))
                throw InputError("generator vertex '" + v.str() + "' is outside the window");
    }

    auto project = [&](const ModuleElem& y) {
        return levelCap ? project_level_leq(y, *levelCap) : y;
    };

    std::vector<ModuleElem> frontier;
    for (const auto* g : nonzero) {
        const ModuleElem projected = project(*g);
        if (projected.is_zero()) continue;
        if (basis.insert(basis.to_dense(projected))) frontier.push_back(projected);
    }

    for (unsigned depth = 0; depth < spanLen && !frontier.empty(); ++depth) {
        std::vector<ModuleElem> next;
        for (const auto& row : frontier) {
            // Colors realized on arrows leaving the support and staying
            // inside the capped window.
            std::set<ColorId> letters;
            for (const auto& [v, c] : row.terms())
                for (const auto& a : q.out_arrows(v)) {
                    if (levelCap && a.tgt.top_level() > *levelCap) continue;
                    letters.insert(a.color);
                }
            for (const auto& letter : letters) {
                ModuleElem image(q.expr());
                for (const auto& [v, mu] : row.terms())
                    for (const auto& a : q.out_arrows(v, letter)) image.add(a.tgt, mu);
                const ModuleElem projected = project(image);
                if (projected.is_zero()) continue;
                if (basis.insert(basis.to_dense(projected))) next.push_back(projected);
            }
        }
        frontier = std::move(next);
    }
    return basis;
}

} // namespace quiverspec
