#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quiverspec/color.hpp"
#include "quiverspec/errors.hpp"

namespace quiverspec {

/// A finite partially ordered set. Elements are opaque ids kept in
/// lexicographic order; the relation is stored as a dense boolean matrix
/// over that order. Instances are immutable after construction.
class Poset {
  public:
    /// Builds a poset from an arbitrary relation, validating reflexivity,
    /// antisymmetry and transitivity.
    static Poset from_relation(std::vector<std::string> elements,
                               const std::vector<std::pair<std::string, std::string>>& leqPairs) {
        Poset p(std::move(elements));
        for (const auto& [a, b] : leqPairs) p.leq_[p.index_of(a) * p.size() + p.index_of(b)] = true;
        p.validate();
        return p;
    }

    /// Builds a poset as the reflexive-transitive closure of a cover
    /// relation. Rejects cycles (reporting one) and unknown ids.
    static Poset from_hasse(std::vector<std::string> elements,
                            const std::vector<std::pair<std::string, std::string>>& covers) {
        Poset p(std::move(elements));
        const std::size_t n = p.size();
        std::vector<std::vector<std::size_t>> succ(n);
        for (const auto& [a, b] : covers) {
            const std::size_t ia = p.index_of(a), ib = p.index_of(b);
            if (ia == ib) throw InputError("cover relates '" + a + "' to itself");
            succ[ia].push_back(ib);
        }
        if (auto cycle = find_cycle(succ)) {
            std::string msg = "cover relation has a cycle: ";
            for (std::size_t v : *cycle) msg += p.elements_[v] + " -> ";
            msg += p.elements_[cycle->front()];
            throw InputError(msg);
        }
        // Reflexive-transitive closure by DFS from every element.
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::size_t> stack{s};
            while (!stack.empty()) {
                const std::size_t v = stack.back();
                stack.pop_back();
                if (p.leq_[s * n + v]) continue;
                p.leq_[s * n + v] = true;
                for (std::size_t w : succ[v]) stack.push_back(w);
            }
        }
        p.validate();
        return p;
    }

    std::size_t size() const { return elements_.size(); }
    const std::vector<std::string>& elements() const { return elements_; }

    bool contains(const std::string& id) const { return index_.count(id) > 0; }

    std::size_t index_of(const std::string& id) const {
        const auto it = index_.find(id);
        if (it == index_.end()) throw InputError("unknown element '" + id + "'");
        return it->second;
    }

    bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
    bool leq(const std::string& a, const std::string& b) const {
        return leq(index_of(a), index_of(b));
    }
    bool lt(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }

    std::vector<std::pair<std::string, std::string>> leq_pairs() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b = 0; b < size(); ++b)
                if (leq(a, b)) out.emplace_back(elements_[a], elements_[b]);
        return out; // already sorted: elements_ is sorted and loops are ordered
    }

    bool is_maximal(std::size_t a) const {
        for (std::size_t b = 0; b < size(); ++b)
            if (lt(a, b)) return false;
        return true;
    }

    friend bool operator==(const Poset& a, const Poset& b) {
        return a.elements_ == b.elements_ && a.leq_ == b.leq_;
    }

  private:
    explicit Poset(std::vector<std::string> elements) : elements_(std::move(elements)) {
        for (const auto& e : elements_) require_valid_id(e, "poset element");
        std::sort(elements_.begin(), elements_.end());
        for (std::size_t i = 0; i + 1 < elements_.size(); ++i)
            if (elements_[i] == elements_[i + 1])
                throw InputError("duplicate element '" + elements_[i] + "'");
        for (std::size_t i = 0; i < elements_.size(); ++i) index_[elements_[i]] = i;
        leq_.assign(elements_.size() * elements_.size(), false);
    }

    void validate() const {
        const std::size_t n = size();
        for (std::size_t a = 0; a < n; ++a)
            if (!leq(a, a)) throw InputError("relation not reflexive at '" + elements_[a] + "'");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (a != b && leq(a, b) && leq(b, a))
                    throw InputError("relation not antisymmetric on '" + elements_[a] + "', '" +
                                     elements_[b] + "'");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (!leq(a, b)) continue;
                for (std::size_t c = 0; c < n; ++c)
                    if (leq(b, c) && !leq(a, c))
                        throw InputError("relation not transitive via '" + elements_[b] + "'");
            }
    }

    static std::optional<std::vector<std::size_t>>
    find_cycle(const std::vector<std::vector<std::size_t>>& succ) {
        const std::size_t n = succ.size();
        std::vector<int> state(n, 0); // 0 unvisited, 1 on stack, 2 done
        std::vector<std::size_t> path;
        std::optional<std::vector<std::size_t>> cycle;

        auto dfs = [&](auto&& self, std::size_t v) -> bool {
            state[v] = 1;
            path.push_back(v);
            for (std::size_t w : succ[v]) {
                if (cycle) return true;
                if (state[w] == 1) {
                    const auto it = std::find(path.begin(), path.end(), w);
                    cycle = std::vector<std::size_t>(it, path.end());
                    return true;
                }
                if (state[w] == 0 && self(self, w)) return true;
            }
            state[v] = 2;
            path.pop_back();
            return false;
        };
        for (std::size_t v = 0; v < n && !cycle; ++v)
            if (state[v] == 0) dfs(dfs, v);
        return cycle;
    }

    std::vector<std::string> elements_;
    std::map<std::string, std::size_t> index_;
    std::vector<bool> leq_;
};

/// An upward-closed subset of a host poset: a ∈ S and a ≤ b implies b ∈ S.
struct UpSet {
    std::vector<std::string> members; // sorted

    static UpSet of(const Poset& host, std::vector<std::string> members) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        UpSet s{std::move(members)};
        for (const auto& a : s.members)
            for (std::size_t b = 0; b < host.size(); ++b)
                if (host.leq(host.index_of(a), b) && !s.contains(host.elements()[b]))
                    throw InputError("set is not upward-closed: contains '" + a + "' but not '" +
                                     host.elements()[b] + "'");
        return s;
    }

    bool contains(const std::string& id) const {
        return std::binary_search(members.begin(), members.end(), id);
    }

    friend bool operator==(const UpSet& a, const UpSet& b) { return a.members == b.members; }
};

/// All upward-closed subsets of P (the open sets of its up-set topology),
/// including the empty set and the full carrier. Ordered by size, then
/// lexicographically.
inline std::vector<UpSet> upward_closed_sets(const Poset& p, std::size_t cap = 16) {
    if (p.size() > cap)
        throw InputError("poset has " + std::to_string(p.size()) +
                         " elements, above the enumeration cap " + std::to_string(cap));
    const std::size_t n = p.size();
    std::vector<UpSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        bool closed = true;
        for (std::size_t a = 0; a < n && closed; ++a) {
            if (!(mask >> a & 1)) continue;
            for (std::size_t b = 0; b < n && closed; ++b)
                if (p.leq(a, b) && !(mask >> b & 1)) closed = false;
        }
        if (!closed) continue;
        UpSet s;
        for (std::size_t a = 0; a < n; ++a)
            if (mask >> a & 1) s.members.push_back(p.elements()[a]);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const UpSet& a, const UpSet& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.members < b.members;
    });
    return out;
}

/// Recovers the specialization order from a family of open sets:
/// a ≤ b iff every open set containing a also contains b. Rejects families
/// that fail to separate distinct points (the result would not be
/// antisymmetric), naming the offending pair.
inline Poset specialization_order(const std::vector<std::string>& elements,
                                  const std::vector<UpSet>& opens) {
    std::vector<std::string> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& a : sorted)
        for (const auto& b : sorted) {
            bool below = true;
            for (const auto& u : opens)
                if (u.contains(a) && !u.contains(b)) {
                    below = false;
                    break;
                }
            if (below) pairs.emplace_back(a, b);
        }
    for (const auto& [a, b] : pairs)
        if (a != b &&
            std::find(pairs.begin(), pairs.end(), std::make_pair(b, a)) != pairs.end())
            throw InputError("points '" + std::min(a, b) + "' and '" + std::max(a, b) +
                             "' are indistinguishable by the given open sets");
    return Poset::from_relation(sorted, pairs);
}

/// Finds an order isomorphism P -> Q if one exists (first match in
/// lexicographic backtracking order), mapping element ids to element ids.
inline std::optional<std::map<std::string, std::string>> find_isomorphism(const Poset& p,
                                                                          const Poset& q) {
    if (p.size() != q.size()) return std::nullopt;
    const std::size_t n = p.size();

    // Degree profile pruning: candidates must agree on down-set/up-set sizes.
    auto profile = [](const Poset& r, std::size_t a) {
        std::size_t down = 0, up = 0;
        for (std::size_t b = 0; b < r.size(); ++b) {
            if (r.leq(b, a)) ++down;
            if (r.leq(a, b)) ++up;
        }
        return std::make_pair(down, up);
    };
    std::vector<std::pair<std::size_t, std::size_t>> profP(n), profQ(n);
    for (std::size_t a = 0; a < n; ++a) {
        profP[a] = profile(p, a);
        profQ[a] = profile(q, a);
    }

    std::vector<std::size_t> image(n, n);
    std::vector<bool> used(n, false);

    auto backtrack = [&](auto&& self, std::size_t a) -> bool {
        if (a == n) return true;
        for (std::size_t b = 0; b < n; ++b) {
            if (used[b] || profP[a] != profQ[b]) continue;
            bool ok = true;
            for (std::size_t prev = 0; prev < a && ok; ++prev)
                ok = (p.leq(a, prev) == q.leq(b, image[prev])) &&
                     (p.leq(prev, a) == q.leq(image[prev], b));
            if (!ok) continue;
            image[a] = b;
            used[b] = true;
            if (self(self, a + 1)) return true;
            used[b] = false;
        }
        return false;
    };
    if (!backtrack(backtrack, 0)) return std::nullopt;

    std::map<std::string, std::string> out;
    for (std::size_t a = 0; a < n; ++a) out[p.elements()[a]] = q.elements()[image[a]];
    return out;
}

/// True iff P can be the prime spectrum of a commutative noetherian ring:
/// no strict chain x < y < z exists.
inline bool cn_realizable(const Poset& p) {
    const std::size_t n = p.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!p.lt(a, b)) continue;
            for (std::size_t c = 0; c < n; ++c)
                if (p.lt(b, c)) return false;
        }
    return true;
}

} // namespace quiverspec
