#ifndef PKALIGN_STRUCTURE_HPP
#define PKALIGN_STRUCTURE_HPP

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pkalign/errors.hpp"

namespace pkalign {

/// A base pairing (i,j) with i < j. Pairings are atomic: edit operations and
/// compositions always treat the two ends together.
struct Pairing {
    int i = 0;
    int j = 0;
    friend constexpr auto operator<=>(const Pairing&, const Pairing&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Pairing& p) {
    return os << '(' << p.i << ',' << p.j << ')';
}

/// A structure is a number of bases with a set of disjoint pairings. A gapped
/// structure (type 1) additionally splits the bases after position `gap` into
/// two legs; either leg may be empty.
struct Structure {
    int n = 0;
    std::vector<Pairing> pairings; // sorted by left end, endpoint-disjoint
    std::optional<int> gap;        // absent = type 0

    bool type1() const { return gap.has_value(); }
    int type() const { return type1() ? 1 : 0; }

    /// Partner of base p, or 0 if p is unpaired.
    int partner(int p) const {
        for (const Pairing& q : pairings) {
            if (q.i == p) return q.j;
            if (q.j == p) return q.i;
        }
        return 0;
    }

    bool unpaired(int p) const { return partner(p) == 0; }

    bool has_pairing(int i, int j) const {
        return std::binary_search(pairings.begin(), pairings.end(), Pairing{i, j});
    }

    int left_leg() const { return type1() ? *gap : n; }
    int right_leg() const { return type1() ? n - *gap : 0; }

    friend bool operator==(const Structure&, const Structure&) = default;
};

inline Structure make_structure(int n, std::vector<Pairing> pairings,
                                std::optional<int> gap = std::nullopt) {
    if (n < 0) fail(Errc::index_out_of_range, "negative base count");
    std::sort(pairings.begin(), pairings.end());
    pairings.erase(std::unique(pairings.begin(), pairings.end()), pairings.end());
    std::vector<char> used(static_cast<size_t>(n) + 1, 0);
    for (const Pairing& p : pairings) {
        if (p.i < 1 || p.j < 1 || p.i > n || p.j > n)
            fail(Errc::index_out_of_range, "pairing (" + std::to_string(p.i) + "," +
                                               std::to_string(p.j) + ") outside [1," +
                                               std::to_string(n) + "]");
        if (p.i >= p.j)
            fail(Errc::not_increasing, "pairing (" + std::to_string(p.i) + "," +
                                           std::to_string(p.j) + ") is not increasing");
        if (used[p.i] || used[p.j])
            fail(Errc::shared_endpoint, "base " + std::to_string(used[p.i] ? p.i : p.j) +
                                            " belongs to two pairings");
        used[p.i] = used[p.j] = 1;
    }
    if (gap && (*gap < 0 || *gap > n))
        fail(Errc::bad_gap, "gap " + std::to_string(*gap) + " outside [0," + std::to_string(n) + "]");
    return Structure{n, std::move(pairings), gap};
}

// The four trivial structures.
inline Structure id0() { return make_structure(1, {}); }
inline Structure id1() { return make_structure(2, {{1, 2}}, 1); }
inline Structure empty0() { return make_structure(0, {}); }
inline Structure empty1() { return make_structure(0, {}, 0); }

inline bool is_id0(const Structure& s) { return !s.type1() && s.n == 1 && s.pairings.empty(); }
inline bool is_id1(const Structure& s) {
    return s.type1() && s.n == 2 && s.gap == 1 && s.pairings.size() == 1 && s.pairings[0] == Pairing{1, 2};
}
inline bool is_empty(const Structure& s) { return s.n == 0; }

enum class PairRelation { independent, nested, crossed };

/// Relation of two endpoint-disjoint pairings: with i < i', independent means
/// i<j<i'<j', nested means i<i'<j'<j, crossed means i<i'<j<j'.
inline PairRelation classify_pair_relation(Pairing p, Pairing q) {
    if (p.i == q.i || p.i == q.j || p.j == q.i || p.j == q.j)
        fail(Errc::shared_endpoint, "pairings share an endpoint");
    if (p.i > q.i) std::swap(p, q);
    if (p.j < q.i) return PairRelation::independent;
    if (p.j > q.j) return PairRelation::nested;
    return PairRelation::crossed;
}

/// True iff no two pairings cross; crossing pairings make a pseudoknot.
inline bool is_nested(const Structure& s) {
    for (size_t a = 0; a < s.pairings.size(); ++a)
        for (size_t b = a + 1; b < s.pairings.size(); ++b)
            if (classify_pair_relation(s.pairings[a], s.pairings[b]) == PairRelation::crossed)
                return false;
    return true;
}

/// A structural element: an unpaired base (partner == 0) or a pairing keyed
/// by its left end.
struct Element {
    int pos = 0;
    int partner = 0;
    bool paired() const { return partner != 0; }
    friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

/// Elements in their total order (by left coordinate).
inline std::vector<Element> element_order(const Structure& s) {
    std::vector<Element> out;
    std::vector<int> mate(static_cast<size_t>(s.n) + 1, 0);
    for (const Pairing& p : s.pairings) {
        mate[p.i] = p.j;
        mate[p.j] = -1; // right end, not an element key
    }
    for (int p = 1; p <= s.n; ++p) {
        if (mate[p] == 0)
            out.push_back({p, 0});
        else if (mate[p] > 0)
            out.push_back({p, mate[p]});
    }
    return out;
}

/// Replace the unpaired base i of s by the whole 0-structure t.
inline Structure compose_at_base(const Structure& s, int i, const Structure& t) {
    if (i < 1 || i > s.n) fail(Errc::index_out_of_range, "base " + std::to_string(i));
    if (!s.unpaired(i)) fail(Errc::base_is_paired, "base " + std::to_string(i) + " is paired");
    if (t.type1()) fail(Errc::wrong_type, "composition along a base needs a 0-structure");

    const int m = t.n;
    Structure out;
    out.n = s.n + m - 1;
    auto shift = [&](int p) { return p < i ? p : p + m - 1; };
    for (const Pairing& p : s.pairings) out.pairings.push_back({shift(p.i), shift(p.j)});
    for (const Pairing& q : t.pairings) out.pairings.push_back({q.i + i - 1, q.j + i - 1});
    std::sort(out.pairings.begin(), out.pairings.end());
    if (s.gap) out.gap = *s.gap < i ? *s.gap : *s.gap + m - 1;
    return out;
}

/// Replace the pairing (i,j) of s by the 1-structure t; t's legs occupy the
/// two positions of the pairing.
inline Structure compose_at_pairing(const Structure& s, Pairing ij, const Structure& t) {
    if (!s.has_pairing(ij.i, ij.j))
        fail(Errc::not_a_pairing, "(" + std::to_string(ij.i) + "," + std::to_string(ij.j) +
                                      ") is not a pairing of the structure");
    if (!t.type1()) fail(Errc::wrong_type, "composition along a pairing needs a 1-structure");

    const int i = ij.i, j = ij.j, m = t.n, l = *t.gap;
    Structure out;
    out.n = s.n + m - 2;
    auto shift = [&](int p) {
        if (p < i) return p;
        if (p < j) return p + l - 1;
        return p + m - 2;
    };
    for (const Pairing& p : s.pairings)
        if (p != ij) out.pairings.push_back({shift(p.i), shift(p.j)});
    auto place = [&](int q) { return q <= l ? q + i - 1 : q + j - 2; };
    for (const Pairing& q : t.pairings) out.pairings.push_back({place(q.i), place(q.j)});
    std::sort(out.pairings.begin(), out.pairings.end());
    if (s.gap) {
        const int k = *s.gap;
        out.gap = k < i ? k : (k < j ? k + l - 1 : k + m - 2);
    }
    return out;
}

/// Compose simultaneously along all structural elements of s, one child per
/// element in element order. Built directly block by block; agrees with any
/// order of iterated single compositions.
inline Structure compose_all(const Structure& s, const std::vector<Structure>& children) {
    const std::vector<Element> elems = element_order(s);
    if (children.size() != elems.size())
        fail(Errc::arity_mismatch, "expected " + std::to_string(elems.size()) + " children, got " +
                                       std::to_string(children.size()));

    // Per-base block sizes: an unpaired base takes its whole child, a pairing
    // puts the child's left leg at i and right leg at j.
    std::vector<int> block(static_cast<size_t>(s.n) + 2, 0);
    for (size_t e = 0; e < elems.size(); ++e) {
        const Structure& c = children[e];
        if (elems[e].paired()) {
            if (!c.type1()) fail(Errc::wrong_type, "pairing element needs a 1-structure child");
            block[elems[e].pos] = *c.gap;
            block[elems[e].partner] = c.n - *c.gap;
        } else {
            if (c.type1()) fail(Errc::wrong_type, "unpaired element needs a 0-structure child");
            block[elems[e].pos] = c.n;
        }
    }
    std::vector<int> offset(static_cast<size_t>(s.n) + 2, 0);
    for (int p = 1; p <= s.n + 1; ++p) offset[p] = offset[p - 1] + block[p - 1];

    Structure out;
    out.n = offset[s.n + 1];
    for (size_t e = 0; e < elems.size(); ++e) {
        const Structure& c = children[e];
        if (elems[e].paired()) {
            const int l = *c.gap, i = elems[e].pos, j = elems[e].partner;
            auto place = [&](int q) { return q <= l ? q + offset[i] : q - l + offset[j]; };
            for (const Pairing& q : c.pairings) out.pairings.push_back({place(q.i), place(q.j)});
        } else {
            const int i = elems[e].pos;
            for (const Pairing& q : c.pairings)
                out.pairings.push_back({q.i + offset[i], q.j + offset[i]});
        }
    }
    std::sort(out.pairings.begin(), out.pairings.end());
    if (s.gap) out.gap = offset[*s.gap + 1];
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Structure& s) {
    os << '(' << s.n << ",{";
    for (size_t a = 0; a < s.pairings.size(); ++a) os << (a ? "," : "") << s.pairings[a];
    os << '}';
    if (s.gap) os << ',' << *s.gap;
    return os << ')';
}

} // namespace pkalign

#endif
