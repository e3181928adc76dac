#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "quiverspec/color.hpp"
#include "quiverspec/errors.hpp"
#include "quiverspec/series.hpp"

namespace quiverspec {

class QuiverExpr;
using QuiverExprPtr = std::shared_ptr<const QuiverExpr>;

/// One vertex with one self-arrow colored c_site.
struct LoopNode {
    std::string site;
};

struct FiniteArrow {
    std::string src, tgt, color;
};

/// An explicit finite colored quiver; arrow colors live in the "base"
/// namespace.
struct FiniteNode {
    std::vector<std::string> vertices;
    std::vector<FiniteArrow> arrows;
};

/// The level construction: vertices are (level, inner vertex) for all
/// natural levels, in-level arrows copy the inner quiver, and every pair
/// (v, w) of inner vertices gets a fresh level-raising color c{v,w}_site
/// with one arrow (i, v) -> (i+1, w) per level.
struct TildeNode {
    QuiverExprPtr inner;
    std::string site;
};

/// Disjoint union: vertices are disambiguated by part tags, colors are
/// shared across parts.
struct SumNode {
    std::vector<std::pair<std::string, QuiverExprPtr>> parts;
};

class QuiverExpr {
  public:
    using Node = std::variant<LoopNode, FiniteNode, TildeNode, SumNode>;

    explicit QuiverExpr(Node node) : node_(std::move(node)) {}

    const Node& node() const { return node_; }
    bool is_loop() const { return std::holds_alternative<LoopNode>(node_); }
    bool is_finite() const { return std::holds_alternative<FiniteNode>(node_); }
    bool is_tilde() const { return std::holds_alternative<TildeNode>(node_); }
    bool is_sum() const { return std::holds_alternative<SumNode>(node_); }
    const TildeNode* as_tilde() const { return std::get_if<TildeNode>(&node_); }
    const SumNode* as_sum() const { return std::get_if<SumNode>(&node_); }
    const LoopNode* as_loop() const { return std::get_if<LoopNode>(&node_); }
    const FiniteNode* as_finite() const { return std::get_if<FiniteNode>(&node_); }

  private:
    Node node_;
};

inline QuiverExprPtr make_loop(std::string site) {
    return std::make_shared<const QuiverExpr>(LoopNode{std::move(site)});
}

inline QuiverExprPtr make_finite(std::vector<std::string> vertices,
                                 std::vector<FiniteArrow> arrows) {
    return std::make_shared<const QuiverExpr>(FiniteNode{std::move(vertices), std::move(arrows)});
}

inline QuiverExprPtr make_tilde(QuiverExprPtr inner, std::string site) {
    return std::make_shared<const QuiverExpr>(TildeNode{std::move(inner), std::move(site)});
}

inline QuiverExprPtr make_sum(std::vector<std::pair<std::string, QuiverExprPtr>> parts) {
    return std::make_shared<const QuiverExpr>(SumNode{std::move(parts)});
}

/// Address of a vertex as a path into the expression tree: a sum tag per
/// Sum node, a level per Tilde node, then a leaf name ("v" for loops, the
/// vertex name for finite quivers).
struct VertexAddr {
    using Step = std::variant<unsigned, std::string>; // tilde level | sum tag
    std::vector<Step> steps;
    std::string leaf;

    friend bool operator==(const VertexAddr& a, const VertexAddr& b) {
        return a.steps == b.steps && a.leaf == b.leaf;
    }

    friend bool operator<(const VertexAddr& a, const VertexAddr& b) {
        const std::size_t n = std::min(a.steps.size(), b.steps.size());
        for (std::size_t i = 0; i < n; ++i) {
            const auto& x = a.steps[i];
            const auto& y = b.steps[i];
            if (x.index() != y.index()) return x.index() < y.index();
            if (x.index() == 0) {
                if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
            } else {
                if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) < std::get<1>(y);
            }
        }
        if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size();
        return a.leaf < b.leaf;
    }

    std::string str() const {
        std::string out;
        for (const auto& s : steps) {
            if (s.index() == 0)
                out += std::to_string(std::get<0>(s));
            else
                out += std::get<1>(s);
            out += "/";
        }
        out += leaf;
        return out;
    }

    /// The level coordinate of the outermost tilde node; only meaningful
    /// when the host expression is a Tilde.
    unsigned top_level() const {
        if (steps.empty() || steps.front().index() != 0)
            throw InputError("address '" + str() + "' has no top-level coordinate");
        return std::get<0>(steps.front());
    }

    /// The largest level coordinate anywhere in the address (0 if none).
    unsigned max_level() const {
        unsigned m = 0;
        for (const auto& s : steps)
            if (s.index() == 0) m = std::max(m, std::get<0>(s));
        return m;
    }

    VertexAddr with_top_level(unsigned level) const {
        VertexAddr a = *this;
        a.steps.front() = level; // top_level() already validated by callers
        return a;
    }
};

inline VertexAddr prefixed_level(unsigned level, const VertexAddr& inner) {
    VertexAddr a;
    a.steps.reserve(inner.steps.size() + 1);
    a.steps.emplace_back(level);
    a.steps.insert(a.steps.end(), inner.steps.begin(), inner.steps.end());
    a.leaf = inner.leaf;
    return a;
}

inline VertexAddr prefixed_tag(const std::string& tag, const VertexAddr& inner) {
    VertexAddr a;
    a.steps.reserve(inner.steps.size() + 1);
    a.steps.emplace_back(tag);
    a.steps.insert(a.steps.end(), inner.steps.begin(), inner.steps.end());
    a.leaf = inner.leaf;
    return a;
}

struct Arrow {
    VertexAddr src, tgt;
    ColorId color;

    friend bool operator==(const Arrow& a, const Arrow& b) {
        return a.src == b.src && a.tgt == b.tgt && a.color == b.color;
    }
    friend bool operator<(const Arrow& a, const Arrow& b) {
        if (!(a.src == b.src)) return a.src < b.src;
        if (!(a.tgt == b.tgt)) return a.tgt < b.tgt;
        return a.color < b.color;
    }
};

/// A composable sequence of arrows; length 0 is the trivial path at `base`.
struct Path {
    VertexAddr base;
    std::vector<Arrow> arrows;

    std::size_t length() const { return arrows.size(); }
    const VertexAddr& source() const { return arrows.empty() ? base : arrows.front().src; }
    const VertexAddr& target() const { return arrows.empty() ? base : arrows.back().tgt; }

    Word word() const {
        Word w;
        w.reserve(arrows.size());
        for (const auto& a : arrows) w.push_back(a.color);
        return w;
    }

    friend bool operator==(const Path& a, const Path& b) {
        if (a.arrows.empty() != b.arrows.empty()) return false;
        if (a.arrows.empty()) return a.base == b.base;
        return a.arrows == b.arrows;
    }
};

/// Checks structural invariants: distinct expression nodes never share a
/// loop/tilde site, sum tags are unique per sum, finite quivers are
/// well-formed, ids use the restricted charset.
inline void validate_expr(const QuiverExprPtr& root) {
    if (!root) throw InputError("null quiver expression");
    std::map<std::string, const QuiverExpr*> sites;
    std::set<const QuiverExpr*> visited;

    auto claimSite = [&](const std::string& site, const QuiverExpr* node) {
        require_valid_id(site, "construction site");
        const auto [it, inserted] = sites.emplace(site, node);
        if (!inserted && it->second != node)
            throw InputError("construction site '" + site + "' used by two distinct nodes");
    };

    auto walk = [&](auto&& self, const QuiverExprPtr& e) -> void {
        if (!e) throw InputError("null quiver expression");
        if (!visited.insert(e.get()).second) return;
        if (const auto* loop = e->as_loop()) {
            claimSite(loop->site, e.get());
        } else if (const auto* fin = e->as_finite()) {
            std::set<std::string> names;
            for (const auto& v : fin->vertices) {
                require_valid_id(v, "finite quiver vertex");
                if (!names.insert(v).second)
                    throw InputError("duplicate finite quiver vertex '" + v + "'");
            }
            for (const auto& a : fin->arrows) {
                if (!names.count(a.src) || !names.count(a.tgt))
                    throw InputError("finite quiver arrow references unknown vertex");
                require_valid_id(a.color, "finite quiver color");
            }
        } else if (const auto* til = e->as_tilde()) {
            claimSite(til->site, e.get());
            self(self, til->inner);
        } else {
            const auto* sum = e->as_sum();
            std::set<std::string> tags;
            for (const auto& [tag, part] : sum->parts) {
                require_valid_id(tag, "sum tag");
                if (!tags.insert(tag).second)
                    throw InputError("duplicate sum tag '" + tag + "'");
                self(self, part);
            }
        }
    };
    walk(walk, root);
}

inline std::optional<VertexAddr> try_parse_vertex_addr(const QuiverExpr& root,
                                                       const std::string& text) {
    std::vector<std::string> segments;
    std::string cur;
    for (char ch : text) {
        if (ch == '/') {
            segments.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    segments.push_back(cur);

    VertexAddr addr;
    const QuiverExpr* e = &root;
    std::size_t k = 0;
    while (true) {
        if (k >= segments.size()) return std::nullopt;
        const std::string& seg = segments[k];
        if (const auto* loop = e->as_loop()) {
            (void)loop;
            if (k + 1 != segments.size() || seg != "v") return std::nullopt;
            addr.leaf = "v";
            return addr;
        }
        if (const auto* fin = e->as_finite()) {
            if (k + 1 != segments.size()) return std::nullopt;
            if (std::find(fin->vertices.begin(), fin->vertices.end(), seg) == fin->vertices.end())
                return std::nullopt;
            addr.leaf = seg;
            return addr;
        }
        if (const auto* til = e->as_tilde()) {
            if (seg.empty() || seg.find_first_not_of("0123456789") != std::string::npos)
                return std::nullopt;
            unsigned long level = 0;
            try {
                level = std::stoul(seg);
            } catch (const std::exception&) {
                return std::nullopt;
            }
            addr.steps.emplace_back(static_cast<unsigned>(level));
            e = til->inner.get();
            ++k;
            continue;
        }
        const auto* sum = e->as_sum();
        const QuiverExpr* next = nullptr;
        for (const auto& [tag, part] : sum->parts)
            if (tag == seg) next = part.get();
        if (!next) return std::nullopt;
        addr.steps.emplace_back(seg);
        e = next;
        ++k;
    }
}

inline VertexAddr parse_vertex_addr(const QuiverExpr& root, const std::string& text) {
    auto addr = try_parse_vertex_addr(root, text);
    if (!addr) throw InputError("'" + text + "' is not a vertex address of this quiver");
    return *addr;
}

/// True when `addr` names a vertex of the (possibly infinite) quiver,
/// with no window constraint on level coordinates.
inline bool valid_vertex_addr(const QuiverExpr& root, const VertexAddr& addr) {
    const QuiverExpr* e = &root;
    std::size_t k = 0;
    while (true) {
        if (const auto* loop = e->as_loop()) {
            (void)loop;
            return k == addr.steps.size() && addr.leaf == "v";
        }
        if (const auto* fin = e->as_finite()) {
            return k == addr.steps.size() &&
                   std::find(fin->vertices.begin(), fin->vertices.end(), addr.leaf) !=
                       fin->vertices.end();
        }
        if (k >= addr.steps.size()) return false;
        if (const auto* til = e->as_tilde()) {
            if (addr.steps[k].index() != 0) return false;
            e = til->inner.get();
            ++k;
            continue;
        }
        const auto* sum = e->as_sum();
        if (addr.steps[k].index() != 1) return false;
        const QuiverExpr* next = nullptr;
        for (const auto& [tag, part] : sum->parts)
            if (tag == std::get<1>(addr.steps[k])) next = part.get();
        if (!next) return false;
        e = next;
        ++k;
    }
}

struct AdmissibilityReport {
    bool admissible = false;
    /// Set when the series was only known up to a truncation bound, so the
    /// verdict covers the stored words only.
    bool windowRelative = false;
    std::map<VertexAddr, std::size_t> counts;
};

/// A finite window onto the quiver denoted by an expression: all vertices
/// whose every level coordinate is <= budget, plus arrow queries. Colored
/// arrow queries are exact for the infinite quiver (the color determines
/// the opposite endpoint); uncolored enumeration is restricted to the
/// window.
class MaterializedQuiver {
  public:
    MaterializedQuiver(QuiverExprPtr expr, unsigned budget)
        : expr_(std::move(expr)), budget_(budget) {
        validate_expr(expr_);
        build_window(*expr_);
        const auto& verts = *windows_.at(expr_.get());
        vertices_ = verts;
        for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);
    }

    const QuiverExprPtr& expr() const { return expr_; }
    unsigned budget() const { return budget_; }
    const std::vector<VertexAddr>& vertices() const { return vertices_; }
    std::size_t vertex_count() const { return vertices_.size(); }

    bool contains(const VertexAddr& v) const { return index_.count(v) > 0; }

    std::size_t index_of(const VertexAddr& v) const {
        const auto it = index_.find(v);
        if (it == index_.end())
            throw InputError("vertex '" + v.str() + "' is not in the materialized window");
        return it->second;
    }

    /// Number of window vertices with top level <= w (tilde hosts only);
    /// they form a prefix of the canonical vertex order.
    std::size_t count_top_level_leq(unsigned w) const {
        std::size_t n = 0;
        while (n < vertices_.size() && vertices_[n].top_level() <= w) ++n;
        return n;
    }

    /// The window of the inner quiver of a tilde root, as inner-relative
    /// addresses.
    const std::vector<VertexAddr>& tilde_inner_window() const {
        const auto* til = expr_->as_tilde();
        if (!til) throw InputError("host quiver is not a tilde construction");
        return *windows_.at(til->inner.get());
    }

    std::vector<Arrow> out_arrows(const VertexAddr& v) const {
        std::vector<Arrow> out;
        collect(*expr_, v, 0, Dir::Forward, nullptr, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<Arrow> in_arrows(const VertexAddr& v) const {
        std::vector<Arrow> out;
        collect(*expr_, v, 0, Dir::Backward, nullptr, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<Arrow> out_arrows(const VertexAddr& v, const ColorId& c) const {
        std::vector<Arrow> out;
        collect(*expr_, v, 0, Dir::Forward, &c, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<Arrow> in_arrows(const VertexAddr& v, const ColorId& c) const {
        std::vector<Arrow> out;
        collect(*expr_, v, 0, Dir::Backward, &c, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Every arrow with both endpoints in the window, in canonical order.
    std::vector<Arrow> all_arrows() const {
        std::vector<Arrow> out;
        for (const auto& v : vertices_) {
            auto arrows = out_arrows(v);
            out.insert(out.end(), arrows.begin(), arrows.end());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::set<ColorId> colors() const {
        std::set<ColorId> out;
        for (const auto& a : all_arrows()) out.insert(a.color);
        return out;
    }

    /// All paths of the infinite quiver ending at v with color word w.
    /// Exact: arrows never lower the level of the tilde node they cross,
    /// and colored backward steps reconstruct sources from the color.
    std::vector<Path> paths_to(const VertexAddr& v, const Word& w) const {
        if (!contains(v))
            throw InputError("vertex '" + v.str() + "' is not in the materialized window");
        return paths_to_rec(v, w, w.size());
    }

    /// All paths of the infinite quiver starting at v with color word w.
    /// Requires every level coordinate of v plus the word length to fit the
    /// budget, so results are window-exact.
    std::vector<Path> paths_from(const VertexAddr& v, const Word& w) const {
        if (!valid_vertex_addr(*expr_, v))
            throw InputError("vertex '" + v.str() + "' is not a vertex of this quiver");
        const unsigned long needed = static_cast<unsigned long>(v.max_level()) + w.size();
        if (needed > budget_)
            throw BudgetError("forward paths from '" + v.str() + "' need a larger window",
                              needed);
        std::vector<Path> frontier{Path{v, {}}};
        for (const auto& letter : w) {
            std::vector<Path> next;
            for (const auto& p : frontier)
                for (const auto& a : out_arrows(p.target(), letter)) {
                    Path q = p;
                    q.arrows.push_back(a);
                    next.push_back(std::move(q));
                }
            frontier = std::move(next);
        }
        return frontier;
    }

    /// P_v(B): all paths ending at v whose color word lies in B.
    std::vector<Path> p_v(const VertexAddr& v, const std::set<Word, WordLess>& b) const {
        std::vector<Path> out;
        for (const auto& w : b) {
            auto paths = paths_to(v, w);
            out.insert(out.end(), paths.begin(), paths.end());
        }
        return out;
    }

    /// Counts P_v(supp f) for every window vertex. For exact series the
    /// verdict covers the infinite quiver (backward branching per color is
    /// finite); for bounded series it covers the stored words only.
    AdmissibilityReport is_admissible(const Series& f) const {
        AdmissibilityReport report;
        report.windowRelative = !f.is_exact();
        for (const auto& v : vertices_) {
            std::size_t count = 0;
            for (const auto& [w, c] : f.terms()) count += count_paths_to(v, w, w.size());
            report.counts.emplace(v, count);
        }
        report.admissible = true;
        return report;
    }

    /// Deterministic DOT rendering of the window.
    std::string to_dot() const {
        std::ostringstream os;
        os << "digraph quiver {\n";
        for (const auto& v : vertices_) os << "  \"" << v.str() << "\";\n";
        for (const auto& a : all_arrows())
            os << "  \"" << a.src.str() << "\" -> \"" << a.tgt.str() << "\" [label=\""
               << a.color.str() << "\"];\n";
        os << "}\n";
        return os.str();
    }

  private:
    enum class Dir { Forward, Backward };

    void build_window(const QuiverExpr& e) {
        if (windows_.count(&e)) return;
        std::vector<VertexAddr> verts;
        if (const auto* loop = e.as_loop()) {
            (void)loop;
            verts.push_back(VertexAddr{{}, "v"});
        } else if (const auto* fin = e.as_finite()) {
            for (const auto& name : fin->vertices) verts.push_back(VertexAddr{{}, name});
        } else if (const auto* til = e.as_tilde()) {
            build_window(*til->inner);
            const auto& inner = *windows_.at(til->inner.get());
            verts.reserve(inner.size() * (budget_ + 1));
            for (unsigned i = 0; i <= budget_; ++i)
                for (const auto& w : inner) verts.push_back(prefixed_level(i, w));
        } else {
            for (const auto& [tag, part] : e.as_sum()->parts) {
                build_window(*part);
                for (const auto& w : *windows_.at(part.get()))
                    verts.push_back(prefixed_tag(tag, w));
            }
        }
        std::sort(verts.begin(), verts.end());
        windows_.emplace(&e, std::make_shared<const std::vector<VertexAddr>>(std::move(verts)));
    }

    static std::string suffix_str(const VertexAddr& addr, std::size_t depth) {
        VertexAddr rel;
        rel.steps.assign(addr.steps.begin() + depth, addr.steps.end());
        rel.leaf = addr.leaf;
        return rel.str();
    }

    /// Emits the arrows at `addr` (root-relative, with `depth` steps already
    /// consumed) in the given direction. With a color filter, cross arrows
    /// are reconstructed from the color itself and are exact for the
    /// infinite quiver; without one, cross arrows enumerate the inner
    /// window.
    void collect(const QuiverExpr& e, const VertexAddr& addr, std::size_t depth, Dir dir,
                 const ColorId* color, std::vector<Arrow>& out) const {
        if (const auto* loop = e.as_loop()) {
            if (depth != addr.steps.size() || addr.leaf != "v")
                throw InputError("address '" + addr.str() + "' does not match quiver structure");
            const ColorId c = ColorId::named(loop->site, "c");
            if (!color || *color == c) out.push_back(Arrow{addr, addr, c});
            return;
        }
        if (const auto* fin = e.as_finite()) {
            if (depth != addr.steps.size())
                throw InputError("address '" + addr.str() + "' does not match quiver structure");
            for (const auto& fa : fin->arrows) {
                const std::string& mine = (dir == Dir::Forward) ? fa.src : fa.tgt;
                const std::string& other = (dir == Dir::Forward) ? fa.tgt : fa.src;
                if (mine != addr.leaf) continue;
                const ColorId c = ColorId::named("base", fa.color);
                if (color && !(*color == c)) continue;
                VertexAddr opposite = addr;
                opposite.leaf = other;
                if (dir == Dir::Forward)
                    out.push_back(Arrow{addr, opposite, c});
                else
                    out.push_back(Arrow{opposite, addr, c});
            }
            return;
        }
        if (depth >= addr.steps.size())
            throw InputError("address '" + addr.str() + "' does not match quiver structure");
        if (const auto* til = e.as_tilde()) {
            if (addr.steps[depth].index() != 0)
                throw InputError("address '" + addr.str() + "' does not match quiver structure");
            const unsigned level = std::get<0>(addr.steps[depth]);
            // In-level arrows: the inner quiver copied at this level.
            collect(*til->inner, addr, depth + 1, dir, color, out);
            // Cross arrows at this tilde node.
            const std::string here = suffix_str(addr, depth + 1);
            if (color) {
                if (color->kind != ColorKind::Cross || color->site != til->site) return;
                if (dir == Dir::Forward) {
                    if (color->crossSrc != here) return;
                    const auto tgtRel = try_parse_vertex_addr(*til->inner, color->crossTgt);
                    if (!tgtRel) return;
                    VertexAddr tgt;
                    tgt.steps.assign(addr.steps.begin(), addr.steps.begin() + depth);
                    tgt.steps.emplace_back(level + 1);
                    tgt.steps.insert(tgt.steps.end(), tgtRel->steps.begin(), tgtRel->steps.end());
                    tgt.leaf = tgtRel->leaf;
                    out.push_back(Arrow{addr, std::move(tgt), *color});
                } else {
                    if (color->crossTgt != here || level == 0) return;
                    const auto srcRel = try_parse_vertex_addr(*til->inner, color->crossSrc);
                    if (!srcRel) return;
                    VertexAddr src;
                    src.steps.assign(addr.steps.begin(), addr.steps.begin() + depth);
                    src.steps.emplace_back(level - 1);
                    src.steps.insert(src.steps.end(), srcRel->steps.begin(), srcRel->steps.end());
                    src.leaf = srcRel->leaf;
                    out.push_back(Arrow{std::move(src), addr, *color});
                }
                return;
            }
            const auto& innerWindow = *windows_.at(til->inner.get());
            if (dir == Dir::Forward) {
                if (level + 1 > budget_) return;
                for (const auto& w : innerWindow) {
                    VertexAddr tgt;
                    tgt.steps.assign(addr.steps.begin(), addr.steps.begin() + depth);
                    tgt.steps.emplace_back(level + 1);
                    tgt.steps.insert(tgt.steps.end(), w.steps.begin(), w.steps.end());
                    tgt.leaf = w.leaf;
                    out.push_back(Arrow{addr, std::move(tgt),
                                        ColorId::cross(til->site, here, w.str())});
                }
            } else {
                if (level == 0) return;
                for (const auto& w : innerWindow) {
                    VertexAddr src;
                    src.steps.assign(addr.steps.begin(), addr.steps.begin() + depth);
                    src.steps.emplace_back(level - 1);
                    src.steps.insert(src.steps.end(), w.steps.begin(), w.steps.end());
                    src.leaf = w.leaf;
                    out.push_back(Arrow{std::move(src), addr,
                                        ColorId::cross(til->site, w.str(), here)});
                }
            }
            return;
        }
        const auto* sum = e.as_sum();
        if (addr.steps[depth].index() != 1)
            throw InputError("address '" + addr.str() + "' does not match quiver structure");
        const std::string& tag = std::get<1>(addr.steps[depth]);
        for (const auto& [partTag, part] : sum->parts)
            if (partTag == tag) {
                collect(*part, addr, depth + 1, dir, color, out);
                return;
            }
        throw InputError("address '" + addr.str() + "' does not match quiver structure");
    }

    std::vector<Path> paths_to_rec(const VertexAddr& v, const Word& w, std::size_t k) const {
        if (k == 0) return {Path{v, {}}};
        std::vector<Path> out;
        for (const auto& a : in_arrows(v, w[k - 1]))
            for (auto& p : paths_to_rec(a.src, w, k - 1)) {
                p.arrows.push_back(a);
                out.push_back(std::move(p));
            }
        return out;
    }

    std::size_t count_paths_to(const VertexAddr& v, const Word& w, std::size_t k) const {
        if (k == 0) return 1;
        std::size_t count = 0;
        for (const auto& a : in_arrows(v, w[k - 1])) count += count_paths_to(a.src, w, k - 1);
        return count;
    }

    QuiverExprPtr expr_;
    unsigned budget_;
    std::vector<VertexAddr> vertices_;
    std::map<VertexAddr, std::size_t> index_;
    std::map<const QuiverExpr*, std::shared_ptr<const std::vector<VertexAddr>>> windows_;
};

} // namespace quiverspec
