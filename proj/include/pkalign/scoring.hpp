#ifndef PKALIGN_SCORING_HPP
#define PKALIGN_SCORING_HPP

#include <istream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "pkalign/interval.hpp"
#include "pkalign/sequence.hpp"

namespace pkalign {

/// Scores are exact non-negative integers; decimal user input is scaled to
/// integers at parse time so minima and ratios stay exact.
using Score = long long;

/// Exact rational, normalized with positive denominator.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d = 1) : num(n), den(d) {
        if (den == 0) fail(Errc::unbounded_ratio, "zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

/// Score tables for the six edit operations. Substituting a letter for
/// itself (and blank against blank) costs nothing; everything is >= 0.
struct ScoreScheme {
    Alphabet alphabet;
    std::vector<Score> base_sub_tab;  // [x*L + y]
    std::vector<Score> base_del_tab;  // [x]
    std::vector<Score> base_ins_tab;  // [y]
    std::vector<Score> pair_sub_tab;  // [((x1*L + x2)*L + y1)*L + y2]
    std::vector<Score> pair_del_tab;  // [x1*L + x2]
    std::vector<Score> pair_ins_tab;  // [y1*L + y2]

    int L() const { return alphabet.size(); }

    int idx(char c) const {
        const int i = alphabet.index(c);
        if (i < 0) fail(Errc::unknown_letter, std::string("letter '") + c + "' not in the alphabet");
        return i;
    }

    Score base_sub(char x, char y) const { return base_sub_tab[static_cast<size_t>(idx(x) * L() + idx(y))]; }
    Score base_del(char x) const { return base_del_tab[static_cast<size_t>(idx(x))]; }
    Score base_ins(char y) const { return base_ins_tab[static_cast<size_t>(idx(y))]; }
    Score pair_sub(char x1, char x2, char y1, char y2) const {
        return pair_sub_tab[static_cast<size_t>(((idx(x1) * L() + idx(x2)) * L() + idx(y1)) * L() + idx(y2))];
    }
    Score pair_del(char x1, char x2) const { return pair_del_tab[static_cast<size_t>(idx(x1) * L() + idx(x2))]; }
    Score pair_ins(char y1, char y2) const { return pair_ins_tab[static_cast<size_t>(idx(y1) * L() + idx(y2))]; }
};

inline ScoreScheme zero_scheme(const Alphabet& alpha = Alphabet::rna()) {
    ScoreScheme s;
    s.alphabet = alpha;
    const size_t L = static_cast<size_t>(alpha.size());
    s.base_sub_tab.assign(L * L, 0);
    s.base_del_tab.assign(L, 0);
    s.base_ins_tab.assign(L, 0);
    s.pair_sub_tab.assign(L * L * L * L, 0);
    s.pair_del_tab.assign(L * L, 0);
    s.pair_ins_tab.assign(L * L, 0);
    return s;
}

/// Checks the score constraints and returns the scheme unchanged.
inline ScoreScheme validate_scheme(ScoreScheme s) {
    auto nonneg = [&](const std::vector<Score>& tab, const char* what) {
        for (Score v : tab)
            if (v < 0) fail(Errc::negative_score, std::string(what) + " has a negative entry");
    };
    nonneg(s.base_sub_tab, "base_sub");
    nonneg(s.base_del_tab, "base_del");
    nonneg(s.base_ins_tab, "base_ins");
    nonneg(s.pair_sub_tab, "pair_sub");
    nonneg(s.pair_del_tab, "pair_del");
    nonneg(s.pair_ins_tab, "pair_ins");
    const int L = s.L();
    for (int x = 0; x < L; ++x)
        if (s.base_sub_tab[static_cast<size_t>(x * L + x)] != 0)
            fail(Errc::nonzero_identity, "base_sub(x,x) must be 0");
    for (int x1 = 0; x1 < L; ++x1)
        for (int x2 = 0; x2 < L; ++x2)
            if (s.pair_sub_tab[static_cast<size_t>(((x1 * L + x2) * L + x1) * L + x2)] != 0)
                fail(Errc::nonzero_identity, "pair_sub(x,y,x,y) must be 0");
    return s;
}

/// Unit preset: every mismatch or indel costs 1, pair operations on both
/// bases cost 2 for indels. Approximation constant 4.
inline ScoreScheme unit_scheme(const Alphabet& alpha = Alphabet::rna()) {
    ScoreScheme s = zero_scheme(alpha);
    const int L = s.L();
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            if (x != y) s.base_sub_tab[static_cast<size_t>(x * L + y)] = 1;
    for (int x = 0; x < L; ++x) s.base_del_tab[static_cast<size_t>(x)] = s.base_ins_tab[static_cast<size_t>(x)] = 1;
    for (size_t a = 0; a < s.pair_del_tab.size(); ++a) s.pair_del_tab[a] = s.pair_ins_tab[a] = 2;
    for (int x1 = 0; x1 < L; ++x1)
        for (int x2 = 0; x2 < L; ++x2)
            for (int y1 = 0; y1 < L; ++y1)
                for (int y2 = 0; y2 < L; ++y2)
                    if (x1 != y1 || x2 != y2)
                        s.pair_sub_tab[static_cast<size_t>(((x1 * L + x2) * L + y1) * L + y2)] = 1;
    return validate_scheme(std::move(s));
}

/// Additive preset: a pair mismatch costs exactly deletion plus insertion,
/// which makes the semi-decomposable minimum exact for arbitrary inputs.
inline ScoreScheme additive_scheme(const Alphabet& alpha = Alphabet::rna()) {
    ScoreScheme s = unit_scheme(alpha);
    const int L = s.L();
    for (int x1 = 0; x1 < L; ++x1)
        for (int x2 = 0; x2 < L; ++x2)
            for (int y1 = 0; y1 < L; ++y1)
                for (int y2 = 0; y2 < L; ++y2)
                    if (x1 != y1 || x2 != y2)
                        s.pair_sub_tab[static_cast<size_t>(((x1 * L + x2) * L + y1) * L + y2)] =
                            s.pair_del_tab[static_cast<size_t>(x1 * L + x2)] +
                            s.pair_ins_tab[static_cast<size_t>(y1 * L + y2)];
    return validate_scheme(std::move(s));
}

/// Which side of the alignment a sequence plays: sequence 1 is deleted
/// against blanks, sequence 2 inserted.
enum class Role { deletion = 1, insertion = 2 };

/// Score of the folded sequence aligned entirely against blanks.
inline Score all_gap_weight(const FoldedSequence& fs, const ScoreScheme& scheme,
                            Role role = Role::deletion) {
    Score w = 0;
    for (int p = 1; p <= fs.size(); ++p)
        if (fs.structure.unpaired(p))
            w += role == Role::deletion ? scheme.base_del(fs.letter(p)) : scheme.base_ins(fs.letter(p));
    for (const Pairing& q : fs.structure.pairings)
        w += role == Role::deletion ? scheme.pair_del(fs.letter(q.i), fs.letter(q.j))
                                    : scheme.pair_ins(fs.letter(q.i), fs.letter(q.j));
    return w;
}

/// R[I;J]: summed weight of the pairings with one end in I and the other in
/// J, answered in O(1) from a 2-D prefix sum.
struct PairDeletionTable {
    int n = 0;
    std::vector<Score> rect; // (n+1)^2 prefix sums over pairing weights

    Score at(Interval I, Interval J) const {
        if (I.empty() || J.empty()) return 0;
        auto cell = [&](int a, int b) { return rect[static_cast<size_t>(a) * (static_cast<size_t>(n) + 1) + static_cast<size_t>(b)]; };
        return cell(I.hi, J.hi) - cell(I.lo - 1, J.hi) - cell(I.hi, J.lo - 1) + cell(I.lo - 1, J.lo - 1);
    }
};

inline PairDeletionTable precompute_R(const FoldedSequence& fs, const ScoreScheme& scheme,
                                      Role role) {
    const int n = fs.size();
    PairDeletionTable t;
    t.n = n;
    t.rect.assign((static_cast<size_t>(n) + 1) * (static_cast<size_t>(n) + 1), 0);
    auto cell = [&](int a, int b) -> Score& {
        return t.rect[static_cast<size_t>(a) * (static_cast<size_t>(n) + 1) + static_cast<size_t>(b)];
    };
    for (const Pairing& q : fs.structure.pairings)
        cell(q.i, q.j) += role == Role::deletion ? scheme.pair_del(fs.letter(q.i), fs.letter(q.j))
                                                 : scheme.pair_ins(fs.letter(q.i), fs.letter(q.j));
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            cell(a, b) += cell(a - 1, b) + cell(a, b - 1) - cell(a - 1, b - 1);
    return t;
}

/// W and R for one folded sequence in one role. W[I] is the all-gap weight
/// of the restriction to I; W[I;J] additionally keeps the pairings spanning
/// the two intervals.
struct WeightTables {
    PairDeletionTable R;
    std::vector<Score> unpaired_prefix; // per-position weight of unpaired bases

    Score U(Interval I) const {
        if (I.empty()) return 0;
        return unpaired_prefix[static_cast<size_t>(I.hi)] - unpaired_prefix[static_cast<size_t>(I.lo) - 1];
    }
    Score W(Interval I) const { return U(I) + R.at(I, I); }
    Score W(Interval I, Interval J) const { return W(I) + W(J) + R.at(I, J); }
};

inline WeightTables precompute_weights(const FoldedSequence& fs, const ScoreScheme& scheme,
                                       Role role) {
    WeightTables t;
    t.R = precompute_R(fs, scheme, role);
    t.unpaired_prefix.assign(static_cast<size_t>(fs.size()) + 1, 0);
    for (int p = 1; p <= fs.size(); ++p) {
        Score w = 0;
        if (fs.structure.unpaired(p))
            w = role == Role::deletion ? scheme.base_del(fs.letter(p)) : scheme.base_ins(fs.letter(p));
        t.unpaired_prefix[static_cast<size_t>(p)] = t.unpaired_prefix[static_cast<size_t>(p) - 1] + w;
    }
    return t;
}

/// Score of an alignment: per-column base terms plus per-pairing terms, with
/// blank patterns dispatching to the deletion/insertion tables.
inline Score score_alignment(const Alignment& a, const ScoreScheme& scheme) {
    const Alphabet& al = scheme.alphabet;
    const Structure& sigma = a.structure;
    if (static_cast<int>(a.t1.size()) != sigma.n || static_cast<int>(a.t2.size()) != sigma.n)
        fail(Errc::invalid_alignment, "word lengths do not match the alignment structure");
    Score total = 0;
    for (int p = 1; p <= sigma.n; ++p) {
        if (!sigma.unpaired(p)) continue;
        const char x = a.t1[static_cast<size_t>(p) - 1], y = a.t2[static_cast<size_t>(p) - 1];
        if (al.is_blank(x) && al.is_blank(y)) continue;
        if (al.is_blank(x))
            total += scheme.base_ins(y);
        else if (al.is_blank(y))
            total += scheme.base_del(x);
        else
            total += scheme.base_sub(x, y);
    }
    for (const Pairing& q : sigma.pairings) {
        const char x1 = a.t1[static_cast<size_t>(q.i) - 1], x2 = a.t1[static_cast<size_t>(q.j) - 1];
        const char y1 = a.t2[static_cast<size_t>(q.i) - 1], y2 = a.t2[static_cast<size_t>(q.j) - 1];
        if (al.is_blank(x1) != al.is_blank(x2) || al.is_blank(y1) != al.is_blank(y2))
            fail(Errc::invalid_alignment, "half-blank pairing in alignment");
        const bool b1 = al.is_blank(x1), b2 = al.is_blank(y1);
        if (b1 && b2) continue;
        if (b1)
            total += scheme.pair_ins(y1, y2);
        else if (b2)
            total += scheme.pair_del(x1, x2);
        else
            total += scheme.pair_sub(x1, x2, y1, y2);
    }
    return total;
}

/// The smallest constant c with c*pair_sub >= pair_del + pair_ins over all
/// mismatched letter pairs (at least 1). The semi-decomposable minimum is at
/// most c times the true minimum.
inline Rational approximation_constant(const ScoreScheme& s) {
    const int L = s.L();
    Rational best(1);
    for (int x1 = 0; x1 < L; ++x1)
        for (int x2 = 0; x2 < L; ++x2)
            for (int y1 = 0; y1 < L; ++y1)
                for (int y2 = 0; y2 < L; ++y2) {
                    if (x1 == y1 && x2 == y2) continue;
                    const Score sub =
                        s.pair_sub_tab[static_cast<size_t>(((x1 * L + x2) * L + y1) * L + y2)];
                    const Score gaps = s.pair_del_tab[static_cast<size_t>(x1 * L + x2)] +
                                       s.pair_ins_tab[static_cast<size_t>(y1 * L + y2)];
                    if (sub == 0)
                        fail(Errc::unbounded_ratio, "mismatched pair substitution with zero score");
                    if (best < Rational(gaps, sub)) best = Rational(gaps, sub);
                }
    return best;
}

/// Score scheme text format. Lines:
///   scale N
///   base_sub X Y V / base_indel X V / pair_sub X1 X2 Y1 Y2 V / pair_indel X1 X2 V
/// `*` is a wildcard over the alphabet (skipping cells the identity
/// constraint pins to zero); later lines override earlier ones. Decimal
/// values are multiplied by the declared scale and must come out integral.
inline ScoreScheme parse_score_scheme(std::istream& in, const Alphabet& alpha = Alphabet::rna()) {
    ScoreScheme s = zero_scheme(alpha);
    const int L = s.L();
    long long scale = 1;
    std::string line;
    int lineno = 0;

    auto parse_value = [&](const std::string& tok) -> Score {
        auto bad = [&]() {
            fail(Errc::parse_error,
                 "scores:" + std::to_string(lineno) + ": bad value '" + tok + "'");
        };
        bool neg = false;
        size_t pos = 0;
        if (pos < tok.size() && (tok[pos] == '-' || tok[pos] == '+')) neg = tok[pos++] == '-';
        long long whole = 0, frac = 0, fracden = 1;
        bool any = false, dot = false;
        for (; pos < tok.size(); ++pos) {
            if (tok[pos] == '.') {
                if (dot) bad();
                dot = true;
            } else if (tok[pos] >= '0' && tok[pos] <= '9') {
                any = true;
                if (!dot)
                    whole = whole * 10 + (tok[pos] - '0');
                else {
                    frac = frac * 10 + (tok[pos] - '0');
                    fracden *= 10;
                }
            } else {
                bad();
            }
        }
        if (!any) bad();
        const long long num = whole * fracden + frac;
        if ((num * scale) % fracden != 0)
            fail(Errc::parse_error, "scores:" + std::to_string(lineno) + ": value '" + tok +
                                        "' is not integral at scale " + std::to_string(scale));
        const long long v = num * scale / fracden;
        return neg ? -v : v;
    };
    auto letters_of = [&](const std::string& tok) -> std::vector<int> {
        if (tok == "*") {
            std::vector<int> all(static_cast<size_t>(L));
            for (int i = 0; i < L; ++i) all[static_cast<size_t>(i)] = i;
            return all;
        }
        if (tok.size() != 1 || alpha.index(tok[0]) < 0)
            fail(Errc::unknown_letter,
                 "scores:" + std::to_string(lineno) + ": unknown letter '" + tok + "'");
        return {alpha.index(tok[0])};
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        auto need = [&](std::string& tok) {
            if (!(ls >> tok))
                fail(Errc::parse_error, "scores:" + std::to_string(lineno) + ": missing field");
        };
        if (kw == "scale") {
            std::string tok;
            need(tok);
            try {
                scale = std::stoll(tok);
            } catch (const std::exception&) {
                fail(Errc::parse_error, "scores:" + std::to_string(lineno) + ": bad scale");
            }
            if (scale < 1)
                fail(Errc::parse_error, "scores:" + std::to_string(lineno) + ": scale must be >= 1");
        } else if (kw == "base_sub") {
            std::string tx, ty, tv;
            need(tx), need(ty), need(tv);
            const Score v = parse_value(tv);
            const bool wild = tx == "*" || ty == "*";
            for (int x : letters_of(tx))
                for (int y : letters_of(ty)) {
                    if (wild && x == y) continue;
                    s.base_sub_tab[static_cast<size_t>(x * L + y)] = v;
                }
        } else if (kw == "base_indel") {
            std::string tx, tv;
            need(tx), need(tv);
            const Score v = parse_value(tv);
            for (int x : letters_of(tx))
                s.base_del_tab[static_cast<size_t>(x)] = s.base_ins_tab[static_cast<size_t>(x)] = v;
        } else if (kw == "pair_sub") {
            std::string t1, t2, t3, t4, tv;
            need(t1), need(t2), need(t3), need(t4), need(tv);
            const Score v = parse_value(tv);
            const bool wild = t1 == "*" || t2 == "*" || t3 == "*" || t4 == "*";
            for (int x1 : letters_of(t1))
                for (int x2 : letters_of(t2))
                    for (int y1 : letters_of(t3))
                        for (int y2 : letters_of(t4)) {
                            if (wild && x1 == y1 && x2 == y2) continue;
                            s.pair_sub_tab[static_cast<size_t>(((x1 * L + x2) * L + y1) * L + y2)] = v;
                        }
        } else if (kw == "pair_indel") {
            std::string t1, t2, tv;
            need(t1), need(t2), need(tv);
            const Score v = parse_value(tv);
            for (int x1 : letters_of(t1))
                for (int x2 : letters_of(t2))
                    s.pair_del_tab[static_cast<size_t>(x1 * L + x2)] =
                        s.pair_ins_tab[static_cast<size_t>(x1 * L + x2)] = v;
        } else {
            fail(Errc::parse_error, "scores:" + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
        }
    }
    return validate_scheme(std::move(s));
}

} // namespace pkalign

#endif
