#ifndef PKALIGN_SEQUENCE_HPP
#define PKALIGN_SEQUENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "pkalign/interval.hpp"
#include "pkalign/structure.hpp"

namespace pkalign {

/// Letters plus one reserved blank symbol. The blank marks inserted/deleted
/// bases in alignment words; it never occurs in folded sequences.
struct Alphabet {
    std::string letters = "ACGU";
    char blank = '-';

    bool is_letter(char c) const { return letters.find(c) != std::string::npos; }
    bool is_blank(char c) const { return c == blank; }
    int index(char c) const {
        const auto p = letters.find(c);
        return p == std::string::npos ? -1 : static_cast<int>(p);
    }
    int size() const { return static_cast<int>(letters.size()); }

    static const Alphabet& rna() {
        static const Alphabet a;
        return a;
    }
};

/// A structure together with its letters: one word for type 0, one word per
/// leg for type 1.
struct FoldedSequence {
    Structure structure;
    std::string word1;
    std::string word2; // empty unless type 1

    int size() const { return structure.n; }

    /// Letter at global base position p (1-based across both legs).
    char letter(int p) const {
        const int k = structure.left_leg();
        return p <= k ? word1[static_cast<size_t>(p) - 1] : word2[static_cast<size_t>(p - k) - 1];
    }

    friend bool operator==(const FoldedSequence&, const FoldedSequence&) = default;
};

inline FoldedSequence make_folded_sequence(Structure s, std::string word,
                                           const Alphabet& alpha = Alphabet::rna()) {
    if (s.type1()) fail(Errc::wrong_type, "type-1 structure needs two words");
    if (static_cast<int>(word.size()) != s.n)
        fail(Errc::length_mismatch, "word length " + std::to_string(word.size()) +
                                        " != base count " + std::to_string(s.n));
    for (char c : word)
        if (!alpha.is_letter(c)) fail(Errc::unknown_letter, std::string("unknown letter '") + c + "'");
    return FoldedSequence{std::move(s), std::move(word), {}};
}

inline FoldedSequence make_folded_sequence(Structure s, std::string w1, std::string w2,
                                           const Alphabet& alpha = Alphabet::rna()) {
    if (!s.type1()) fail(Errc::wrong_type, "two words need a type-1 structure");
    if (static_cast<int>(w1.size()) != s.left_leg() || static_cast<int>(w2.size()) != s.right_leg())
        fail(Errc::length_mismatch, "leg word lengths do not match the legs");
    for (char c : w1 + w2)
        if (!alpha.is_letter(c)) fail(Errc::unknown_letter, std::string("unknown letter '") + c + "'");
    return FoldedSequence{std::move(s), std::move(w1), std::move(w2)};
}

/// A common superstructure with two blank-extended words; projecting either
/// word recovers the corresponding input folded sequence.
struct Alignment {
    Structure structure;
    std::string t1; // length structure.n, over letters + blank
    std::string t2;

    friend bool operator==(const Alignment&, const Alignment&) = default;
};

/// Keep the bases in I (and J, if given) and the pairings with both ends
/// inside; a pairing with an end outside vanishes together with both bases.
/// With J given the result is gapped between the two intervals.
inline FoldedSequence restrict(const FoldedSequence& fs, Interval I,
                               std::optional<Interval> J = std::nullopt) {
    const Structure& s = fs.structure;
    if (s.type1()) fail(Errc::wrong_type, "restriction is defined on 0-sequences");
    auto check = [&](const Interval& iv) {
        if (!iv.empty() && (iv.lo < 1 || iv.hi > s.n))
            fail(Errc::out_of_range, "interval outside the sequence");
    };
    check(I);
    if (J) {
        check(*J);
        if (!I.empty() && !J->empty() && I.hi >= J->lo)
            fail(Errc::overlapping_intervals, "intervals must be disjoint and ordered");
    }
    auto inside = [&](int p) { return I.contains(p) || (J && J->contains(p)); };

    std::vector<int> newpos(static_cast<size_t>(s.n) + 1, 0);
    std::string w1, w2;
    Structure out;
    int kept = 0;
    for (int p = 1; p <= s.n; ++p) {
        if (!inside(p)) continue;
        const int q = s.partner(p);
        if (q != 0 && !inside(q)) continue; // pairing leaves the scope: base goes too
        newpos[p] = ++kept;
        (J && J->contains(p) ? w2 : w1) += fs.letter(p);
    }
    out.n = kept;
    for (const Pairing& p : s.pairings)
        if (newpos[p.i] && newpos[p.j]) out.pairings.push_back({newpos[p.i], newpos[p.j]});
    std::sort(out.pairings.begin(), out.pairings.end());
    if (J) out.gap = static_cast<int>(w1.size());
    return FoldedSequence{std::move(out), std::move(w1), std::move(w2)};
}

/// Remove the given pairings together with both their bases.
inline FoldedSequence remove_pairings(const FoldedSequence& fs, const std::vector<Pairing>& drop) {
    const Structure& s = fs.structure;
    std::vector<char> gone(static_cast<size_t>(s.n) + 1, 0);
    for (const Pairing& p : drop) {
        if (!s.has_pairing(p.i, p.j))
            fail(Errc::unknown_pairing, "(" + std::to_string(p.i) + "," + std::to_string(p.j) +
                                            ") is not a pairing of the structure");
        gone[p.i] = gone[p.j] = 1;
    }
    std::vector<int> newpos(static_cast<size_t>(s.n) + 1, 0);
    std::string w1, w2;
    int kept = 0;
    for (int p = 1; p <= s.n; ++p) {
        if (gone[p]) continue;
        newpos[p] = ++kept;
        (s.type1() && p > s.left_leg() ? w2 : w1) += fs.letter(p);
    }
    Structure out;
    out.n = kept;
    for (const Pairing& p : s.pairings)
        if (!gone[p.i]) out.pairings.push_back({newpos[p.i], newpos[p.j]});
    std::sort(out.pairings.begin(), out.pairings.end());
    if (s.type1()) out.gap = static_cast<int>(w1.size());
    return FoldedSequence{std::move(out), std::move(w1), std::move(w2)};
}

/// Remove all blank bases of (sigma, t); a pairing whose bases are blank
/// disappears entirely. One blank end and one letter end is invalid.
inline FoldedSequence project(const Structure& sigma, const std::string& t,
                              const Alphabet& alpha = Alphabet::rna()) {
    if (static_cast<int>(t.size()) != sigma.n)
        fail(Errc::length_mismatch, "word length does not match the structure");
    auto blank = [&](int p) { return alpha.is_blank(t[static_cast<size_t>(p) - 1]); };
    for (const Pairing& p : sigma.pairings)
        if (blank(p.i) != blank(p.j))
            fail(Errc::half_blank_pairing, "pairing (" + std::to_string(p.i) + "," +
                                               std::to_string(p.j) + ") is half blank");
    std::vector<int> newpos(static_cast<size_t>(sigma.n) + 1, 0);
    std::string w1, w2;
    int kept = 0;
    for (int p = 1; p <= sigma.n; ++p) {
        if (blank(p)) continue;
        newpos[p] = ++kept;
        (sigma.type1() && p > sigma.left_leg() ? w2 : w1) += t[static_cast<size_t>(p) - 1];
    }
    Structure out;
    out.n = kept;
    for (const Pairing& p : sigma.pairings)
        if (newpos[p.i]) out.pairings.push_back({newpos[p.i], newpos[p.j]});
    std::sort(out.pairings.begin(), out.pairings.end());
    if (sigma.type1()) out.gap = static_cast<int>(w1.size());
    return FoldedSequence{std::move(out), std::move(w1), std::move(w2)};
}

} // namespace pkalign

#endif
