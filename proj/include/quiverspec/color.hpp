#pragma once

#include <compare>
#include <string>
#include <tuple>
#include <vector>

#include "quiverspec/errors.hpp"

namespace quiverspec {

/// Identifiers (poset elements, sum tags, construction sites, finite-quiver
/// vertex names, color symbols) are restricted so that canonical address and
/// color strings stay unambiguous.
inline bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    for (char ch : id) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                        (ch >= '0' && ch <= '9') || ch == '-';
        if (!ok) return false;
    }
    return true;
}

inline void require_valid_id(const std::string& id, const char* what) {
    if (!valid_id(id))
        throw InputError(std::string(what) + " '" + id + "' must match [A-Za-z0-9-]+");
}

enum class ColorKind { Named, Cross };

/// A color together with the construction site that introduced it.
/// Named colors are base symbols (site "base") or the loop colors c_p
/// (site p). Cross colors are the fresh level-raising colors of a tilde
/// node; src/tgt are canonical inner vertex addresses.
struct ColorId {
    std::string site;
    ColorKind kind = ColorKind::Named;
    std::string symbol;   // Named only
    std::string crossSrc; // Cross only
    std::string crossTgt; // Cross only

    static ColorId named(std::string site, std::string symbol) {
        ColorId c;
        c.site = std::move(site);
        c.kind = ColorKind::Named;
        c.symbol = std::move(symbol);
        return c;
    }

    static ColorId cross(std::string site, std::string src, std::string tgt) {
        ColorId c;
        c.site = std::move(site);
        c.kind = ColorKind::Cross;
        c.crossSrc = std::move(src);
        c.crossTgt = std::move(tgt);
        return c;
    }

    friend bool operator==(const ColorId& a, const ColorId& b) {
        return a.kind == b.kind && a.site == b.site && a.symbol == b.symbol &&
               a.crossSrc == b.crossSrc && a.crossTgt == b.crossTgt;
    }

    friend std::strong_ordering operator<=>(const ColorId& a, const ColorId& b) {
        return std::tie(a.site, a.kind, a.symbol, a.crossSrc, a.crossTgt) <=>
               std::tie(b.site, b.kind, b.symbol, b.crossSrc, b.crossTgt);
    }

    /// Canonical string form: "c" (base), "c_p" (loop color at site p),
    /// "c{v,w}_p" (cross color at site p).
    std::string str() const {
        if (kind == ColorKind::Named) {
            if (site == "base") return symbol;
            return symbol + "_" + site;
        }
        return "c{" + crossSrc + "," + crossTgt + "}_" + site;
    }

    static ColorId parse(const std::string& text) {
        if (text.rfind("c{", 0) == 0) {
            const auto close = text.rfind("}_");
            if (close == std::string::npos)
                throw InputError("malformed cross color '" + text + "'");
            const std::string inner = text.substr(2, close - 2);
            const auto comma = inner.find(',');
            if (comma == std::string::npos)
                throw InputError("malformed cross color '" + text + "'");
            return cross(text.substr(close + 2), inner.substr(0, comma), inner.substr(comma + 1));
        }
        const auto us = text.rfind('_');
        if (us == std::string::npos) {
            require_valid_id(text, "color symbol");
            return named("base", text);
        }
        const std::string symbol = text.substr(0, us);
        const std::string site = text.substr(us + 1);
        require_valid_id(symbol, "color symbol");
        require_valid_id(site, "color site");
        return named(site, symbol);
    }
};

/// A word in the free monoid over colors; the empty word is the identity.
using Word = std::vector<ColorId>;

/// Canonical word order: by length, then lexicographic on ColorId.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto cmp = a[i] <=> b[i];
            if (cmp != 0) return cmp < 0;
        }
        return false;
    }
};

inline Word word_concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

inline std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) out += ".";
        out += w[i].str();
    }
    return out;
}

} // namespace quiverspec
