#ifndef PKALIGN_ALIGN_HPP
#define PKALIGN_ALIGN_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pkalign/generators.hpp"
#include "pkalign/scoring.hpp"
#include "pkalign/sequence.hpp"

namespace pkalign {

struct AlignOptions {
    bool strict_proper = false; // paper-letter splittings (no empty intervals, propriety check)
    bool traceback = false;     // record per-entry choices and reconstruct an alignment
};

struct AlignStats {
    std::size_t s0_entries = 0;
    std::size_t s1_entries = 0;
    std::size_t splittings_examined = 0;
};

struct AlignResult {
    Score score = 0;
    std::optional<Alignment> alignment;
    AlignStats stats;
};

namespace detail {

// Memo keys pack each interval into two bytes (lo, hi+1); the canonical
// empty interval packs to zero. Positions are capped accordingly.
constexpr int max_dp_bases = 254;

inline std::uint16_t pack_interval(Interval I) {
    return I.empty() ? 0
                     : static_cast<std::uint16_t>((static_cast<unsigned>(I.lo) << 8) |
                                                  static_cast<unsigned>(I.hi + 1));
}
inline std::uint32_t key0(Interval I1, Interval I2) {
    return (static_cast<std::uint32_t>(pack_interval(I1)) << 16) | pack_interval(I2);
}
inline std::uint64_t key1(Interval I1, Interval J1, Interval I2, Interval J2) {
    return (static_cast<std::uint64_t>(pack_interval(I1)) << 48) |
           (static_cast<std::uint64_t>(pack_interval(J1)) << 32) |
           (static_cast<std::uint64_t>(pack_interval(I2)) << 16) | pack_interval(J2);
}

/// Open-addressing score map; the memo lookup is the hottest operation of
/// the whole program. Keys are stored shifted by one so zero marks an empty
/// slot (the all-empty tuple never reaches the tables).
class ScoreMap {
public:
    ScoreMap() { rehash(1u << 10); }

    const Score* find(std::uint64_t key) const {
        const std::uint64_t k = key + 1;
        for (std::size_t at = probe(k);; at = (at + 1) & mask_) {
            if (keys_[at] == k) return &vals_[at];
            if (keys_[at] == 0) return nullptr;
        }
    }

    void insert(std::uint64_t key, Score v) {
        if ((size_ + 1) * 10 >= keys_.size() * 7) rehash(keys_.size() * 2);
        const std::uint64_t k = key + 1;
        for (std::size_t at = probe(k);; at = (at + 1) & mask_) {
            if (keys_[at] == 0) {
                keys_[at] = k;
                vals_[at] = v;
                ++size_;
                return;
            }
            if (keys_[at] == k) return; // entries are written once
        }
    }

    std::size_t size() const { return size_; }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }
    std::size_t probe(std::uint64_t k) const { return static_cast<std::size_t>(mix(k)) & mask_; }

    void rehash(std::size_t cap) {
        std::vector<std::uint64_t> okeys = std::move(keys_);
        std::vector<Score> ovals = std::move(vals_);
        keys_.assign(cap, 0);
        vals_.assign(cap, 0);
        mask_ = cap - 1;
        size_ = 0;
        for (std::size_t i = 0; i < okeys.size(); ++i) {
            if (okeys[i] == 0) continue;
            for (std::size_t at = probe(okeys[i]);; at = (at + 1) & mask_) {
                if (keys_[at] == 0) {
                    keys_[at] = okeys[i];
                    vals_[at] = ovals[i];
                    ++size_;
                    break;
                }
            }
        }
    }

    std::vector<std::uint64_t> keys_;
    std::vector<Score> vals_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

} // namespace detail

/// Best choice of a memo entry, enough to replay the decision in traceback.
struct Choice {
    enum class Kind : std::uint8_t { all_gap, single_match, pair_match, edit, split };
    Kind kind = Kind::all_gap;
    int gen = -1;                       // generator index for Kind::split
    int p1 = 0, q1 = 0, p2 = 0, q2 = 0; // matched base positions for the match kinds
    Splitting split1;                   // parts for structure 1 (legs concatenated)
    Splitting split2;
};

namespace detail {

struct NwOp {
    int a = 0, b = 0; // a,b > 0: match; b == 0: deletion; a == 0: insertion
};

/// Plain sequence alignment of two position lists; used when a subproblem
/// has no pairing left on one side, where the structural minimum degenerates
/// to edit distance. Tie preference: match, then deletion, then insertion.
template <class SubF, class DelF, class InsF>
inline Score needleman_wunsch(const std::vector<int>& apos, const std::vector<int>& bpos, SubF sub,
                              DelF del, InsF ins, std::vector<NwOp>* ops = nullptr) {
    const size_t ka = apos.size(), kb = bpos.size();
    std::vector<Score> d((ka + 1) * (kb + 1), 0);
    auto at = [&](size_t i, size_t j) -> Score& { return d[i * (kb + 1) + j]; };
    for (size_t i = 1; i <= ka; ++i) at(i, 0) = at(i - 1, 0) + del(apos[i - 1]);
    for (size_t j = 1; j <= kb; ++j) at(0, j) = at(0, j - 1) + ins(bpos[j - 1]);
    for (size_t i = 1; i <= ka; ++i)
        for (size_t j = 1; j <= kb; ++j)
            at(i, j) = std::min({at(i - 1, j - 1) + sub(apos[i - 1], bpos[j - 1]),
                                 at(i - 1, j) + del(apos[i - 1]), at(i, j - 1) + ins(bpos[j - 1])});
    if (ops) {
        ops->clear();
        size_t i = ka, j = kb;
        while (i > 0 || j > 0) {
            if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + sub(apos[i - 1], bpos[j - 1])) {
                ops->push_back({apos[i - 1], bpos[j - 1]});
                --i, --j;
            } else if (i > 0 && at(i, j) == at(i - 1, j) + del(apos[i - 1])) {
                ops->push_back({apos[i - 1], 0});
                --i;
            } else {
                ops->push_back({0, bpos[j - 1]});
                --j;
            }
        }
        std::reverse(ops->begin(), ops->end());
    }
    return at(ka, kb);
}

} // namespace detail

/// Sparse score tables S0[I1;I2] and S1[I1,J1;I2,J2] keyed by canonical
/// interval tuples; entries are written once. Choices are kept only when the
/// job records them for traceback.
struct MemoTables {
    detail::ScoreMap s0;
    detail::ScoreMap s1;
    std::unordered_map<std::uint32_t, Choice> s0_choice;
    std::unordered_map<std::uint64_t, Choice> s1_choice;
    bool recording = false;
};

/// One alignment job: the memoized recursion over interval subproblems. The
/// score is the minimum over semi-decomposable alignments of the two inputs,
/// which is the exact minimum whenever one input is decomposable.
class Aligner {
public:
    Aligner(const FoldedSequence& fs1, const FoldedSequence& fs2, const ScoreScheme& scheme,
            const GeneratorSet& gamma, AlignOptions opts = {})
        : fs1_(fs1), fs2_(fs2), scheme_(scheme), gamma_(gamma), opts_(opts) {
        if (fs1.structure.type1() || fs2.structure.type1())
            fail(Errc::type_mismatch, "alignment inputs must be 0-sequences");
        if (fs1.size() > detail::max_dp_bases || fs2.size() > detail::max_dp_bases)
            fail(Errc::too_large, "input exceeds the packed memo key capacity");
        for (int p = 1; p <= fs1.size(); ++p) scheme.idx(fs1.letter(p));
        for (int p = 1; p <= fs2.size(); ++p) scheme.idx(fs2.letter(p));
        memo_.recording = opts.traceback;
        w1_ = precompute_weights(fs1, scheme, Role::deletion);
        w2_ = precompute_weights(fs2, scheme, Role::insertion);
        partner1_ = partner_array(fs1.structure);
        partner2_ = partner_array(fs2.structure);
        full1_ = Interval::make(1, fs1.size());
        full2_ = Interval::make(1, fs2.size());
        compile_plans();
        gap_dominated_ = scheme_gap_dominated(scheme);
    }

    Score run() { return s0(full1_, full2_); }

    const MemoTables& tables() const { return memo_; }

    AlignStats stats() const {
        AlignStats st = stats_;
        st.s0_entries = memo_.s0.size();
        st.s1_entries = memo_.s1.size();
        return st;
    }

    Alignment traceback() const;

private:
    static std::vector<int> partner_array(const Structure& s) {
        std::vector<int> m(static_cast<size_t>(s.n) + 1, 0);
        for (const Pairing& p : s.pairings) {
            m[static_cast<size_t>(p.i)] = p.j;
            m[static_cast<size_t>(p.j)] = p.i;
        }
        return m;
    }

    bool relaxed() const { return !opts_.strict_proper; }

    /// Bases at interval edges whose pairing leaves the scope vanish under
    /// restriction, so entries that differ only in them share one canonical
    /// key. Only used in relaxed mode; strict mode follows the written
    /// recursion on the intervals as given.
    Interval trim(Interval iv, Interval other, const std::vector<int>& partner) const {
        while (!iv.empty()) {
            const int q = partner[static_cast<size_t>(iv.lo)];
            if (q == 0 || iv.contains(q) || other.contains(q)) break;
            iv = Interval::make(iv.lo + 1, iv.hi);
        }
        while (!iv.empty()) {
            const int q = partner[static_cast<size_t>(iv.hi)];
            if (q == 0 || iv.contains(q) || other.contains(q)) break;
            iv = Interval::make(iv.lo, iv.hi - 1);
        }
        return iv;
    }

    /// Restricted content of a scope, capped at two elements: the shortcut
    /// paths only need to distinguish none / one / more, plus the element.
    struct Content {
        int count = 0;
        bool pair = false;
        int p = 0, q = 0;       // the element's bases (q = 0 for an unpaired base)
        int pleg = 0, qleg = 0; // 0 = first interval, 1 = second
    };

    Content content(Interval I, Interval J, const std::vector<int>& partner) const {
        Content c;
        auto scan = [&](Interval iv, int leg) {
            if (c.count >= 2) return;
            for (int p = iv.lo; p <= iv.hi; ++p) {
                const int q = partner[static_cast<size_t>(p)];
                if (q != 0 && !I.contains(q) && !J.contains(q)) continue; // vanishes
                if (q != 0 && q < p) continue;                            // counted at its left end
                if (++c.count >= 2) return;
                c.pair = q != 0;
                c.p = p;
                c.q = q;
                c.pleg = leg;
                c.qleg = q == 0 ? leg : (J.contains(q) ? 1 : 0);
            }
        };
        scan(I, 0);
        scan(J, 1);
        return c;
    }

    static int scope_pair_count(const Structure& s, Interval I, Interval J) {
        int c = 0;
        for (const Pairing& p : s.pairings) {
            const bool iin = I.contains(p.i) || J.contains(p.i);
            const bool jin = I.contains(p.j) || J.contains(p.j);
            if (iin && jin) ++c;
        }
        return c;
    }

    static std::vector<int> unpaired_in(Interval iv, const std::vector<int>& partner) {
        std::vector<int> out;
        for (int p = iv.lo; p <= iv.hi; ++p)
            if (partner[static_cast<size_t>(p)] == 0) out.push_back(p);
        return out;
    }

    /// True when every substitution costs at least the deletion/insertion
    /// difference; then |W1 - W2| bounds any alignment score from below and
    /// the splitting search can prune on it.
    static bool scheme_gap_dominated(const ScoreScheme& s) {
        const int L = s.L();
        for (int x = 0; x < L; ++x)
            for (int y = 0; y < L; ++y) {
                const Score d = s.base_del_tab[static_cast<size_t>(x)] -
                                s.base_ins_tab[static_cast<size_t>(y)];
                if (s.base_sub_tab[static_cast<size_t>(x * L + y)] < (d < 0 ? -d : d)) return false;
            }
        for (int a = 0; a < L * L; ++a)
            for (int b = 0; b < L * L; ++b) {
                const Score d = s.pair_del_tab[static_cast<size_t>(a)] -
                                s.pair_ins_tab[static_cast<size_t>(b)];
                if (s.pair_sub_tab[static_cast<size_t>(a * L * L + b)] < (d < 0 ? -d : d))
                    return false;
            }
        return true;
    }

    /// Exact minimum when one side has no pairing inside the scope: the
    /// other side's pairings are all deleted at fixed cost and the unpaired
    /// content aligns leg by leg as plain sequences.
    Score edit_value(Interval I1, Interval J1, Interval I2, Interval J2) const {
        const Score pair_cost = (w1_.W(I1, J1) - w1_.U(I1) - w1_.U(J1)) +
                                (w2_.W(I2, J2) - w2_.U(I2) - w2_.U(J2));
        auto sub = [&](int a, int b) { return scheme_.base_sub(fs1_.letter(a), fs2_.letter(b)); };
        auto del = [&](int a) { return scheme_.base_del(fs1_.letter(a)); };
        auto ins = [&](int b) { return scheme_.base_ins(fs2_.letter(b)); };
        Score v = pair_cost;
        v += detail::needleman_wunsch(unpaired_in(I1, partner1_), unpaired_in(I2, partner2_), sub,
                                      del, ins);
        v += detail::needleman_wunsch(unpaired_in(J1, partner1_), unpaired_in(J2, partner2_), sub,
                                      del, ins);
        return v;
    }

    // Every generator is compiled once into a slot plan: per base the prior
    // slots it owes an R charge to and the element (if any) completed when
    // the slot is placed. Splitting evaluation then runs off the plan with
    // running partial sums instead of re-deriving the generator shape.
    struct SlotPlan {
        enum class Completes : std::uint8_t { nothing, unpaired, pair_right };
        Completes completes = Completes::nothing;
        int pair_left = 0; // slot of the pairing's left end for pair_right
        std::vector<int> prior_nonpair;
    };
    struct GenPlan {
        std::vector<SlotPlan> slots;
    };

    void compile_plans() {
        plans_.reserve(gamma_.generators.size());
        for (const Generator& g : gamma_.generators) {
            GenPlan plan;
            plan.slots.resize(static_cast<size_t>(g.bases()));
            for (const Element& e : g.elements) {
                if (e.paired()) {
                    plan.slots[static_cast<size_t>(e.partner) - 1].completes =
                        SlotPlan::Completes::pair_right;
                    plan.slots[static_cast<size_t>(e.partner) - 1].pair_left = e.pos;
                } else {
                    plan.slots[static_cast<size_t>(e.pos) - 1].completes = SlotPlan::Completes::unpaired;
                }
            }
            for (int t = 1; t <= g.bases(); ++t)
                for (int u = 1; u < t; ++u)
                    if (!g.structure.has_pairing(u, t))
                        plan.slots[static_cast<size_t>(t) - 1].prior_nonpair.push_back(u);
            plans_.push_back(std::move(plan));
        }
    }

    // Termination measure over canonical entries: total interval content,
    // with live S1 entries ranked below S0 so the only size-preserving step
    // is S0 -> S1 (a loop-style transition). Every admitted child decreases
    // the measure, so the relaxed recursion cannot cycle; the splittings the
    // guard rejects hand all content to one element and are identity steps
    // whose candidate equals the entry itself.
    struct Mu {
        int size = 0;
        int rank = 0; // 0 = live S1, 1 = S0
        bool operator<(const Mu& o) const {
            return size != o.size ? size < o.size : rank < o.rank;
        }
    };

    static Mu mu1(Interval a1, Interval b1, Interval a2, Interval b2) {
        const int size = a1.size() + b1.size() + a2.size() + b2.size();
        const bool collapses = (a1.empty() && a2.empty()) || (b1.empty() && b2.empty());
        return {size, collapses ? 1 : 0}; // normalized S1 collapses to S0
    }

    /// State of one generator's splitting search on one entry.
    struct Search {
        const Generator* g = nullptr;
        const GenPlan* plan = nullptr;
        int gen_index = -1;
        // leg bounds per structure, arithmetic form (lo > hi means empty)
        int a1lo = 0, a1hi = 0, a2lo = 0, a2hi = 0; // leg A = I
        int b1lo = 0, b1hi = 0, b2lo = 0, b2hi = 0; // leg B = J (type 1 only)
        Mu parent;
        std::vector<Interval> parts1, parts2;
    };

    /// Minimum over every generator of the wanted type and every admissible
    /// splitting pair; updates best/choice in place.
    void try_splits(bool type1, Interval I1, Interval J1, Interval I2, Interval J2, Mu parent,
                    Score& best, Choice& choice) {
        Search sr;
        sr.parent = parent;
        for (size_t gi = 0; gi < gamma_.generators.size(); ++gi) {
            const Generator& g = gamma_.generators[gi];
            if (g.type1() != type1) continue;
            if (type1) {
                // a leg with no generator bases can only take an empty interval
                if (g.leg1 == 0 && !(I1.empty() && I2.empty())) continue;
                if (g.leg2 == 0 && !(J1.empty() && J2.empty())) continue;
            }
            sr.g = &g;
            sr.plan = &plans_[gi];
            sr.gen_index = static_cast<int>(gi);
            sr.a1lo = I1.empty() ? 1 : I1.lo;
            sr.a1hi = I1.empty() ? 0 : I1.hi;
            sr.a2lo = I2.empty() ? 1 : I2.lo;
            sr.a2hi = I2.empty() ? 0 : I2.hi;
            sr.b1lo = J1.empty() ? 1 : J1.lo;
            sr.b1hi = J1.empty() ? 0 : J1.hi;
            sr.b2lo = J2.empty() ? 1 : J2.lo;
            sr.b2hi = J2.empty() ? 0 : J2.hi;
            sr.parts1.assign(static_cast<size_t>(g.bases()), Interval::none());
            sr.parts2.assign(static_cast<size_t>(g.bases()), Interval::none());
            const bool starts_in_b = g.type1() && g.leg1 == 0;
            place_slot(sr, 1, starts_in_b ? sr.b1lo : sr.a1lo, starts_in_b ? sr.b2lo : sr.a2lo, 0,
                       best, choice);
        }
    }

    /// Assigns intervals to slot t on both structures and recurses; partial
    /// sums prune early because every summand is non-negative.
    void place_slot(Search& sr, int t, int cur1, int cur2, Score partial, Score& best,
                    Choice& choice) {
        const Generator& g = *sr.g;
        const bool strict = opts_.strict_proper;
        const bool in_leg_b = g.type1() && t > g.leg1;
        const bool last_of_leg = g.type1() ? (t == g.leg1 || t == g.bases()) : t == g.bases();
        const int hi1 = in_leg_b ? sr.b1hi : sr.a1hi;
        const int hi2 = in_leg_b ? sr.b2hi : sr.a2hi;
        // remaining slots of this leg after t must still fit (strict mode)
        const int leg_end = g.type1() && !in_leg_b ? g.leg1 : g.bases();
        const int reserve = strict ? leg_end - t : 0;
        const SlotPlan& slot = sr.plan->slots[static_cast<size_t>(t) - 1];
        const Interval tail1 =
            (!in_leg_b && g.type1()) ? Interval::make(sr.b1lo, sr.b1hi) : Interval::none();
        const Interval tail2 =
            (!in_leg_b && g.type1()) ? Interval::make(sr.b2lo, sr.b2hi) : Interval::none();

        const int start1 = last_of_leg ? hi1 : (strict ? cur1 : cur1 - 1);
        const int stop1 = last_of_leg ? hi1 : hi1 - reserve;
        for (int e1 = start1; e1 <= stop1; ++e1) {
            if (strict && e1 < cur1) continue; // strict mode forbids empty parts
            sr.parts1[static_cast<size_t>(t) - 1] = Interval::make(cur1, e1);
            const int start2 = last_of_leg ? hi2 : (strict ? cur2 : cur2 - 1);
            const int stop2 = last_of_leg ? hi2 : hi2 - reserve;
            for (int e2 = start2; e2 <= stop2; ++e2) {
                if (strict && e2 < cur2) continue;
                ++stats_.splittings_examined;
                sr.parts2[static_cast<size_t>(t) - 1] = Interval::make(cur2, e2);
                const Interval p1 = sr.parts1[static_cast<size_t>(t) - 1];
                const Interval p2 = sr.parts2[static_cast<size_t>(t) - 1];

                Score x = partial;
                for (int u : slot.prior_nonpair)
                    x += w1_.R.at(sr.parts1[static_cast<size_t>(u) - 1], p1) +
                         w2_.R.at(sr.parts2[static_cast<size_t>(u) - 1], p2);
                if (x >= best) continue;
                if (slot.completes == SlotPlan::Completes::unpaired) {
                    const Mu m{p1.size() + p2.size(), 1};
                    if (!(m < sr.parent)) continue;
                    x += s0(p1, p2);
                } else if (slot.completes == SlotPlan::Completes::pair_right) {
                    const Interval q1 = sr.parts1[static_cast<size_t>(slot.pair_left) - 1];
                    const Interval q2 = sr.parts2[static_cast<size_t>(slot.pair_left) - 1];
                    if (!(mu1(q1, p1, q2, p2) < sr.parent)) continue;
                    x += s1(q1, p1, q2, p2);
                }
                if (x >= best) continue;
                if (gap_dominated_ && t < g.bases()) {
                    // any completion pays at least the weight gap of the
                    // remaining regions
                    const Score r1 = w1_.W(Interval::make(e1 + 1, hi1), tail1);
                    const Score r2 = w2_.W(Interval::make(e2 + 1, hi2), tail2);
                    if (x + (r1 > r2 ? r1 - r2 : r2 - r1) >= best) continue;
                }

                if (t == g.bases()) {
                    if (strict && !(detail::splitting_is_proper(fs1_.structure, sr.parts1, g) &&
                                    detail::splitting_is_proper(fs2_.structure, sr.parts2, g)))
                        continue;
                    best = x;
                    choice.kind = Choice::Kind::split;
                    choice.gen = sr.gen_index;
                    choice.split1.parts = sr.parts1;
                    choice.split2.parts = sr.parts2;
                } else {
                    const bool next_in_b = g.type1() && t + 1 > g.leg1;
                    const int n1 = next_in_b && !in_leg_b ? sr.b1lo : e1 + 1;
                    const int n2 = next_in_b && !in_leg_b ? sr.b2lo : e2 + 1;
                    place_slot(sr, t + 1, n1, n2, x, best, choice);
                }
            }
        }
    }

    Score s0(Interval I1, Interval I2) {
        if (relaxed()) {
            I1 = trim(I1, Interval::none(), partner1_);
            I2 = trim(I2, Interval::none(), partner2_);
        }
        const std::uint32_t key = detail::key0(I1, I2);
        if (const Score* hit = memo_.s0.find(key)) return *hit;

        Score best;
        Choice choice;
        const Content c1 = content(I1, Interval::none(), partner1_);
        const Content c2 = content(I2, Interval::none(), partner2_);
        if (c1.count == 0 || c2.count == 0) {
            // one side restricts to nothing: the all-gap alignment is the
            // only one, so its weight is exact
            best = w1_.W(I1) + w2_.W(I2);
        } else if (relaxed() && c1.count == 1 && c2.count == 1) {
            best = w1_.W(I1) + w2_.W(I2);
            if (c1.pair == c2.pair) {
                const Score sub = c1.pair
                                      ? scheme_.pair_sub(fs1_.letter(c1.p), fs1_.letter(c1.q),
                                                         fs2_.letter(c2.p), fs2_.letter(c2.q))
                                      : scheme_.base_sub(fs1_.letter(c1.p), fs2_.letter(c2.p));
                if (sub < best) {
                    best = sub;
                    choice.kind = c1.pair ? Choice::Kind::pair_match : Choice::Kind::single_match;
                    choice.p1 = c1.p;
                    choice.q1 = c1.q;
                    choice.p2 = c2.p;
                    choice.q2 = c2.q;
                }
            }
        } else if (relaxed() && (scope_pair_count(fs1_.structure, I1, Interval::none()) == 0 ||
                                 scope_pair_count(fs2_.structure, I2, Interval::none()) == 0)) {
            best = edit_value(I1, Interval::none(), I2, Interval::none());
            choice.kind = Choice::Kind::edit;
        } else {
            best = w1_.W(I1) + w2_.W(I2);
            if (!relaxed() && I1.single() && I2.single() &&
                partner1_[static_cast<size_t>(I1.lo)] == 0 &&
                partner2_[static_cast<size_t>(I2.lo)] == 0) {
                const Score sub = scheme_.base_sub(fs1_.letter(I1.lo), fs2_.letter(I2.lo));
                if (sub < best) {
                    best = sub;
                    choice.kind = Choice::Kind::single_match;
                    choice.p1 = I1.lo;
                    choice.p2 = I2.lo;
                }
            }
            if (best > 0)
                try_splits(false, I1, {}, I2, {}, Mu{I1.size() + I2.size(), 1}, best, choice);
        }
        memo_.s0.insert(key, best);
        if (memo_.recording) memo_.s0_choice.emplace(key, std::move(choice));
        return best;
    }

    Score s1(Interval I1, Interval J1, Interval I2, Interval J2) {
        if (relaxed()) {
            const Interval i1 = trim(I1, J1, partner1_), j1 = trim(J1, I1, partner1_);
            const Interval i2 = trim(I2, J2, partner2_), j2 = trim(J2, I2, partner2_);
            I1 = i1, J1 = j1, I2 = i2, J2 = j2;
        }
        // leg normalization: a leg pair empty on both structures collapses
        if (I1.empty() && I2.empty()) return s0(J1, J2);
        if (J1.empty() && J2.empty()) return s0(I1, I2);
        const std::uint64_t key = detail::key1(I1, J1, I2, J2);
        if (const Score* hit = memo_.s1.find(key)) return *hit;

        Score best;
        Choice choice;
        const Content c1 = content(I1, J1, partner1_);
        const Content c2 = content(I2, J2, partner2_);
        if (c1.count == 0 || c2.count == 0) {
            best = w1_.W(I1, J1) + w2_.W(I2, J2);
        } else if (relaxed() && c1.count == 1 && c2.count == 1) {
            best = w1_.W(I1, J1) + w2_.W(I2, J2);
            // a shared column must sit on the same side of the gap in both
            // inputs, so matching also requires equal leg membership
            if (c1.pair == c2.pair && c1.pleg == c2.pleg && c1.qleg == c2.qleg) {
                const Score sub = c1.pair
                                      ? scheme_.pair_sub(fs1_.letter(c1.p), fs1_.letter(c1.q),
                                                         fs2_.letter(c2.p), fs2_.letter(c2.q))
                                      : scheme_.base_sub(fs1_.letter(c1.p), fs2_.letter(c2.p));
                if (sub < best) {
                    best = sub;
                    choice.kind = c1.pair ? Choice::Kind::pair_match : Choice::Kind::single_match;
                    choice.p1 = c1.p;
                    choice.q1 = c1.q;
                    choice.p2 = c2.p;
                    choice.q2 = c2.q;
                }
            }
        } else if (relaxed() && (scope_pair_count(fs1_.structure, I1, J1) == 0 ||
                                 scope_pair_count(fs2_.structure, I2, J2) == 0)) {
            best = edit_value(I1, J1, I2, J2);
            choice.kind = Choice::Kind::edit;
        } else {
            best = w1_.W(I1, J1) + w2_.W(I2, J2);
            if (!relaxed() && I1.single() && J1.single() && I2.single() && J2.single() &&
                partner1_[static_cast<size_t>(I1.lo)] == J1.lo &&
                partner2_[static_cast<size_t>(I2.lo)] == J2.lo) {
                const Score sub = scheme_.pair_sub(fs1_.letter(I1.lo), fs1_.letter(J1.lo),
                                                   fs2_.letter(I2.lo), fs2_.letter(J2.lo));
                if (sub < best) {
                    best = sub;
                    choice.kind = Choice::Kind::pair_match;
                    choice.p1 = I1.lo;
                    choice.q1 = J1.lo;
                    choice.p2 = I2.lo;
                    choice.q2 = J2.lo;
                }
            }
            if (best > 0)
                try_splits(true, I1, J1, I2, J2,
                           Mu{I1.size() + J1.size() + I2.size() + J2.size(), 0}, best, choice);
        }
        memo_.s1.insert(key, best);
        if (memo_.recording) memo_.s1_choice.emplace(key, std::move(choice));
        return best;
    }

    friend struct TracebackBuilder;

    const FoldedSequence& fs1_;
    const FoldedSequence& fs2_;
    const ScoreScheme& scheme_;
    const GeneratorSet& gamma_;
    AlignOptions opts_;
    WeightTables w1_, w2_;
    std::vector<int> partner1_, partner2_;
    Interval full1_, full2_;
    std::vector<GenPlan> plans_;
    MemoTables memo_;
    AlignStats stats_;
};

namespace detail {
struct TraceCol {
    int p1 = 0, p2 = 0; // original base positions, 0 = blank
};
} // namespace detail

/// Replays the recorded best choices into a concrete alignment. Matched
/// elements become shared columns, incompatible and all-gap elements become
/// blank-backed columns, and column order keeps both inputs in sequence.
struct TracebackBuilder {
    const Aligner& A;
    std::vector<detail::TraceCol> cols;
    std::vector<std::pair<int, int>> colpairs;
    using List = std::vector<int>;

    explicit TracebackBuilder(const Aligner& a) : A(a) {
        if (!a.memo_.recording)
            fail(Errc::missing_records, "alignment was run without traceback recording");
    }

    int make_col(int p1, int p2) {
        cols.push_back({p1, p2});
        return static_cast<int>(cols.size()) - 1;
    }

    const Choice& choice0(Interval I1, Interval I2) const {
        const auto it = A.memo_.s0_choice.find(detail::key0(I1, I2));
        if (it == A.memo_.s0_choice.end()) fail(Errc::missing_records, "missing S0 choice record");
        return it->second;
    }
    const Choice& choice1(Interval I1, Interval J1, Interval I2, Interval J2) const {
        const auto it = A.memo_.s1_choice.find(detail::key1(I1, J1, I2, J2));
        if (it == A.memo_.s1_choice.end()) fail(Errc::missing_records, "missing S1 choice record");
        return it->second;
    }

    /// All-gap columns of one structure inside the given scope: unpaired
    /// bases and the pairings that stay within the scope. Bases whose
    /// pairing leaves the scope belong to an outer level.
    void gap_cols(int side, Interval A1, Interval B1, List& outa, List& outb) {
        const auto& partner = side == 1 ? A.partner1_ : A.partner2_;
        auto inside = [&](int p) { return A1.contains(p) || B1.contains(p); };
        std::vector<std::pair<int, int>> made; // paired position -> col id
        auto emit = [&](Interval iv, List& out) {
            for (int p = iv.lo; p <= iv.hi; ++p) {
                const int q = partner[static_cast<size_t>(p)];
                if (q != 0 && !inside(q)) continue;
                const int id = make_col(side == 1 ? p : 0, side == 1 ? 0 : p);
                out.push_back(id);
                if (q != 0) made.push_back({p, id});
            }
        };
        if (!A1.empty()) emit(A1, outa);
        if (!B1.empty()) emit(B1, outb);
        for (const auto& [p, id] : made) {
            const int q = partner[static_cast<size_t>(p)];
            if (p < q)
                for (const auto& [p2, id2] : made)
                    if (p2 == q) colpairs.push_back({id, id2});
        }
    }

    /// Inserts a blank-backed column into a region list, keeping the
    /// sequence positions of the owning side ascending.
    void insert_ordered(List& list, int id, int side, int pos) {
        auto at = [&](int cid) {
            return side == 1 ? cols[static_cast<size_t>(cid)].p1 : cols[static_cast<size_t>(cid)].p2;
        };
        auto it = list.begin();
        while (it != list.end() && (at(*it) == 0 || at(*it) < pos)) ++it;
        list.insert(it, id);
    }

    void split_regions(const Generator& g, const Splitting& sp1, const Splitting& sp2,
                       std::vector<List>& regions) {
        regions.assign(static_cast<size_t>(g.bases()), {});
        for (const Element& e : g.elements) {
            const size_t i = static_cast<size_t>(e.pos) - 1;
            if (e.paired()) {
                const size_t j = static_cast<size_t>(e.partner) - 1;
                auto [left, right] = emit1(sp1.parts[i], sp1.parts[j], sp2.parts[i], sp2.parts[j]);
                regions[i] = std::move(left);
                regions[j] = std::move(right);
            } else {
                regions[i] = emit0(sp1.parts[i], sp2.parts[i]);
            }
        }
        // incompatible pairings become blank-matched pairing columns
        for (int side = 1; side <= 2; ++side) {
            const FoldedSequence& fs = side == 1 ? A.fs1_ : A.fs2_;
            const Splitting& sp = side == 1 ? sp1 : sp2;
            auto part_of = [&](int p) -> int {
                for (size_t t = 0; t < sp.parts.size(); ++t)
                    if (sp.parts[t].contains(p)) return static_cast<int>(t);
                return -1;
            };
            for (const Pairing& q : fs.structure.pairings) {
                const int a = part_of(q.i), b = part_of(q.j);
                if (a < 0 || b < 0 || a == b) continue;
                if (g.structure.has_pairing(std::min(a, b) + 1, std::max(a, b) + 1)) continue;
                const int ci = make_col(side == 1 ? q.i : 0, side == 1 ? 0 : q.i);
                const int cj = make_col(side == 1 ? q.j : 0, side == 1 ? 0 : q.j);
                insert_ordered(regions[static_cast<size_t>(a)], ci, side, q.i);
                insert_ordered(regions[static_cast<size_t>(b)], cj, side, q.j);
                colpairs.push_back({ci, cj});
            }
        }
    }

    void match_cols(const Choice& c, List& left, List& right) {
        if (c.kind == Choice::Kind::single_match) {
            left.push_back(make_col(c.p1, c.p2));
            return;
        }
        const int l = make_col(c.p1, c.p2);
        const int r = make_col(c.q1, c.q2);
        colpairs.push_back({l, r});
        left.push_back(l);
        right.push_back(r);
    }

    /// Replays an edit-distance entry: per-leg sequence alignment columns
    /// plus blank-matched columns for the deleted pairings.
    void edit_leg(Interval iv1, Interval iv2, List& out) {
        auto sub = [&](int a, int b) { return A.scheme_.base_sub(A.fs1_.letter(a), A.fs2_.letter(b)); };
        auto del = [&](int a) { return A.scheme_.base_del(A.fs1_.letter(a)); };
        auto ins = [&](int b) { return A.scheme_.base_ins(A.fs2_.letter(b)); };
        std::vector<detail::NwOp> ops;
        detail::needleman_wunsch(Aligner::unpaired_in(iv1, A.partner1_),
                                 Aligner::unpaired_in(iv2, A.partner2_), sub, del, ins, &ops);
        for (const detail::NwOp& op : ops) out.push_back(make_col(op.a, op.b));
    }

    void edit_pairs(int side, Interval I, Interval J, List& left, List& right) {
        const FoldedSequence& fs = side == 1 ? A.fs1_ : A.fs2_;
        for (const Pairing& q : fs.structure.pairings) {
            const bool iin = I.contains(q.i) || J.contains(q.i);
            const bool jin = I.contains(q.j) || J.contains(q.j);
            if (!iin || !jin) continue;
            const int ci = make_col(side == 1 ? q.i : 0, side == 1 ? 0 : q.i);
            const int cj = make_col(side == 1 ? q.j : 0, side == 1 ? 0 : q.j);
            insert_ordered(J.contains(q.i) ? right : left, ci, side, q.i);
            insert_ordered(J.contains(q.j) ? right : left, cj, side, q.j);
            colpairs.push_back({ci, cj});
        }
    }

    List emit0(Interval I1, Interval I2) {
        if (A.relaxed()) {
            I1 = A.trim(I1, Interval::none(), A.partner1_);
            I2 = A.trim(I2, Interval::none(), A.partner2_);
        }
        List out;
        if (I1.empty() && I2.empty()) return out;
        const Choice& c = choice0(I1, I2);
        switch (c.kind) {
        case Choice::Kind::single_match:
        case Choice::Kind::pair_match: {
            List right;
            match_cols(c, out, right);
            out.insert(out.end(), right.begin(), right.end());
            return out;
        }
        case Choice::Kind::all_gap: {
            List dummy;
            gap_cols(1, I1, Interval::none(), out, dummy);
            gap_cols(2, I2, Interval::none(), out, dummy);
            return out;
        }
        case Choice::Kind::edit: {
            List dummy;
            edit_leg(I1, I2, out);
            edit_pairs(1, I1, Interval::none(), out, dummy);
            edit_pairs(2, I2, Interval::none(), out, dummy);
            return out;
        }
        case Choice::Kind::split: {
            const Generator& g = A.gamma_.generators[static_cast<size_t>(c.gen)];
            std::vector<List> regions;
            split_regions(g, c.split1, c.split2, regions);
            for (List& r : regions) out.insert(out.end(), r.begin(), r.end());
            return out;
        }
        }
        fail(Errc::missing_records, "unexpected choice in S0 traceback");
    }

    std::pair<List, List> emit1(Interval I1, Interval J1, Interval I2, Interval J2) {
        if (A.relaxed()) {
            const Interval i1 = A.trim(I1, J1, A.partner1_), j1 = A.trim(J1, I1, A.partner1_);
            const Interval i2 = A.trim(I2, J2, A.partner2_), j2 = A.trim(J2, I2, A.partner2_);
            I1 = i1, J1 = j1, I2 = i2, J2 = j2;
        }
        List left, right;
        if (I1.empty() && I2.empty()) {
            right = emit0(J1, J2);
            return {std::move(left), std::move(right)};
        }
        if (J1.empty() && J2.empty()) {
            left = emit0(I1, I2);
            return {std::move(left), std::move(right)};
        }
        const Choice& c = choice1(I1, J1, I2, J2);
        switch (c.kind) {
        case Choice::Kind::single_match:
        case Choice::Kind::pair_match: {
            // matched element columns go to the legs holding the bases
            if (c.kind == Choice::Kind::single_match) {
                const int id = make_col(c.p1, c.p2);
                (J1.contains(c.p1) || J2.contains(c.p2) ? right : left).push_back(id);
            } else {
                const int l = make_col(c.p1, c.p2);
                const int r = make_col(c.q1, c.q2);
                colpairs.push_back({l, r});
                (J1.contains(c.p1) || J2.contains(c.p2) ? right : left).push_back(l);
                (J1.contains(c.q1) || J2.contains(c.q2) ? right : left).push_back(r);
            }
            return {std::move(left), std::move(right)};
        }
        case Choice::Kind::all_gap:
            gap_cols(1, I1, J1, left, right);
            gap_cols(2, I2, J2, left, right);
            return {std::move(left), std::move(right)};
        case Choice::Kind::edit:
            edit_leg(I1, I2, left);
            edit_leg(J1, J2, right);
            edit_pairs(1, I1, J1, left, right);
            edit_pairs(2, I2, J2, left, right);
            return {std::move(left), std::move(right)};
        case Choice::Kind::split: {
            const Generator& g = A.gamma_.generators[static_cast<size_t>(c.gen)];
            std::vector<List> regions;
            split_regions(g, c.split1, c.split2, regions);
            for (int t = 0; t < g.bases(); ++t) {
                List& dst = t < g.leg1 ? left : right;
                dst.insert(dst.end(), regions[static_cast<size_t>(t)].begin(),
                           regions[static_cast<size_t>(t)].end());
            }
            return {std::move(left), std::move(right)};
        }
        }
        fail(Errc::missing_records, "unexpected choice in S1 traceback");
    }

    Alignment build() {
        const List order = emit0(A.full1_, A.full2_);
        std::vector<int> final_index(cols.size(), 0);
        for (size_t c = 0; c < order.size(); ++c)
            final_index[static_cast<size_t>(order[c])] = static_cast<int>(c) + 1;
        Alignment a;
        a.structure.n = static_cast<int>(order.size());
        const char blank = A.scheme_.alphabet.blank;
        a.t1.assign(order.size(), blank);
        a.t2.assign(order.size(), blank);
        for (size_t c = 0; c < order.size(); ++c) {
            const detail::TraceCol& col = cols[static_cast<size_t>(order[c])];
            if (col.p1) a.t1[c] = A.fs1_.letter(col.p1);
            if (col.p2) a.t2[c] = A.fs2_.letter(col.p2);
        }
        for (const auto& [x, y] : colpairs) {
            const int a1 = final_index[static_cast<size_t>(x)], b1 = final_index[static_cast<size_t>(y)];
            a.structure.pairings.push_back({std::min(a1, b1), std::max(a1, b1)});
        }
        std::sort(a.structure.pairings.begin(), a.structure.pairings.end());
        return a;
    }
};

inline Alignment Aligner::traceback() const {
    TracebackBuilder tb(*this);
    return tb.build();
}

/// Computes the minimum semi-decomposable alignment score. The result is the
/// exact minimum whenever one input is decomposable, and otherwise at most
/// the approximation constant times the minimum.
inline AlignResult align(const FoldedSequence& fs1, const FoldedSequence& fs2,
                         const ScoreScheme& scheme, const GeneratorSet& gamma,
                         AlignOptions opts = {}) {
    Aligner job(fs1, fs2, scheme, gamma, opts);
    AlignResult r;
    r.score = job.run();
    r.stats = job.stats();
    if (opts.traceback) r.alignment = job.traceback();
    return r;
}

/// True iff projecting the alignment recovers both inputs and every pairing
/// is letter/letter or blank/blank in each word.
inline bool validate_alignment(const Alignment& a, const FoldedSequence& fs1,
                               const FoldedSequence& fs2,
                               const Alphabet& alpha = Alphabet::rna(),
                               std::string* why = nullptr) {
    auto reject = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    const int n = a.structure.n;
    if (static_cast<int>(a.t1.size()) != n || static_cast<int>(a.t2.size()) != n)
        return reject("word lengths do not match the structure");
    for (char c : a.t1 + a.t2)
        if (!alpha.is_letter(c) && !alpha.is_blank(c))
            return reject(std::string("unknown symbol '") + c + "'");
    try {
        if (project(a.structure, a.t1, alpha) != fs1) return reject("projection does not yield input 1");
        if (project(a.structure, a.t2, alpha) != fs2) return reject("projection does not yield input 2");
    } catch (const Error& e) {
        return reject(e.what());
    }
    if (why) why->clear();
    return true;
}

namespace detail {

/// Exhaustive minimum over monotone matchings of structural elements:
/// unpaired bases match unpaired bases, pairings match whole pairings. This
/// enumeration covers exactly the valid alignments.
struct OracleSearch {
    struct Elem {
        int i = 0, j = 0; // j = 0 for an unpaired base
        bool paired() const { return j != 0; }
    };
    const FoldedSequence& fs1;
    const FoldedSequence& fs2;
    const ScoreScheme& scheme;
    std::vector<Elem> e1, e2;
    std::vector<Score> del1, ins2;
    std::vector<Score> suffix_gain; // lower bound on remaining match gain
    std::vector<int> used2;
    std::vector<std::pair<int, int>> pinned; // matched position pairs
    std::vector<int> best_match;             // per element of e1: index into e2 or -1
    std::vector<int> cur_match;
    Score base_total = 0;
    Score best_delta = 0;

    static std::vector<Elem> elements(const FoldedSequence& fs) {
        std::vector<Elem> out;
        for (const Element& e : element_order(fs.structure)) out.push_back({e.pos, e.partner});
        return out;
    }

    OracleSearch(const FoldedSequence& a, const FoldedSequence& b, const ScoreScheme& s)
        : fs1(a), fs2(b), scheme(s), e1(elements(a)), e2(elements(b)) {
        for (const Elem& e : e1)
            del1.push_back(e.paired() ? scheme.pair_del(fs1.letter(e.i), fs1.letter(e.j))
                                      : scheme.base_del(fs1.letter(e.i)));
        for (const Elem& e : e2)
            ins2.push_back(e.paired() ? scheme.pair_ins(fs2.letter(e.i), fs2.letter(e.j))
                                      : scheme.base_ins(fs2.letter(e.i)));
        for (Score v : del1) base_total += v;
        for (Score v : ins2) base_total += v;
        used2.assign(e2.size(), 0);
        cur_match.assign(e1.size(), -1);
        best_match = cur_match;

        suffix_gain.assign(e1.size() + 1, 0);
        for (int a1 = static_cast<int>(e1.size()) - 1; a1 >= 0; --a1) {
            Score g = 0;
            for (size_t b2 = 0; b2 < e2.size(); ++b2) {
                if (e1[static_cast<size_t>(a1)].paired() != e2[b2].paired()) continue;
                g = std::min(g, match_delta(static_cast<size_t>(a1), b2));
            }
            suffix_gain[static_cast<size_t>(a1)] = suffix_gain[static_cast<size_t>(a1) + 1] + g;
        }
    }

    Score match_delta(size_t a, size_t b) const {
        const Elem& x = e1[a];
        const Elem& y = e2[b];
        const Score sub = x.paired()
                              ? scheme.pair_sub(fs1.letter(x.i), fs1.letter(x.j), fs2.letter(y.i),
                                                fs2.letter(y.j))
                              : scheme.base_sub(fs1.letter(x.i), fs2.letter(y.i));
        return sub - del1[a] - ins2[b];
    }

    bool monotone_with(int p, int q) const {
        for (const auto& [a, b] : pinned)
            if ((a < p) != (b < q)) return false;
        return true;
    }

    void search(size_t a, Score delta) {
        // the all-unmatched solution (delta 0) is pre-recorded, so only
        // branches that can still strictly improve are worth exploring
        if (delta + suffix_gain[a] >= best_delta) return;
        if (a == e1.size()) {
            best_delta = delta;
            best_match = cur_match;
            return;
        }
        const Elem& x = e1[a];
        for (size_t b = 0; b < e2.size(); ++b) {
            if (used2[b] || x.paired() != e2[b].paired()) continue;
            if (!monotone_with(x.i, e2[b].i)) continue;
            if (x.paired() && !monotone_with(x.j, e2[b].j)) continue;
            pinned.push_back({x.i, e2[b].i});
            if (x.paired()) pinned.push_back({x.j, e2[b].j});
            used2[b] = 1;
            cur_match[a] = static_cast<int>(b);
            search(a + 1, delta + match_delta(a, b));
            cur_match[a] = -1;
            used2[b] = 0;
            pinned.pop_back();
            if (x.paired()) pinned.pop_back();
        }
        search(a + 1, delta); // leave element a unmatched
    }

    std::pair<Score, Alignment> run() {
        best_delta = 0;
        best_match.assign(e1.size(), -1);
        search(0, 0);
        return {base_total + best_delta, realize()};
    }

    /// Builds the alignment induced by the best matching.
    Alignment realize() const {
        std::vector<std::pair<int, int>> shared; // matched position pairs, sorted by side 1
        for (size_t a = 0; a < e1.size(); ++a) {
            if (best_match[a] < 0) continue;
            const Elem& x = e1[a];
            const Elem& y = e2[static_cast<size_t>(best_match[a])];
            shared.push_back({x.i, y.i});
            if (x.paired()) shared.push_back({x.j, y.j});
        }
        std::sort(shared.begin(), shared.end());

        const char blank = scheme.alphabet.blank;
        std::vector<detail::TraceCol> cols;
        std::vector<int> col1(static_cast<size_t>(fs1.size()) + 1, 0);
        std::vector<int> col2(static_cast<size_t>(fs2.size()) + 1, 0);
        int next1 = 1, next2 = 1;
        auto flush = [&](int upto1, int upto2) {
            for (; next1 < upto1; ++next1) {
                col1[static_cast<size_t>(next1)] = static_cast<int>(cols.size());
                cols.push_back({next1, 0});
            }
            for (; next2 < upto2; ++next2) {
                col2[static_cast<size_t>(next2)] = static_cast<int>(cols.size());
                cols.push_back({0, next2});
            }
        };
        for (const auto& [p, q] : shared) {
            flush(p, q);
            col1[static_cast<size_t>(p)] = col2[static_cast<size_t>(q)] = static_cast<int>(cols.size());
            cols.push_back({p, q});
            ++next1;
            ++next2;
        }
        flush(fs1.size() + 1, fs2.size() + 1);

        Alignment a;
        a.structure.n = static_cast<int>(cols.size());
        a.t1.assign(cols.size(), blank);
        a.t2.assign(cols.size(), blank);
        for (size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].p1) a.t1[c] = fs1.letter(cols[c].p1);
            if (cols[c].p2) a.t2[c] = fs2.letter(cols[c].p2);
        }
        for (const Pairing& p : fs1.structure.pairings)
            a.structure.pairings.push_back(
                {col1[static_cast<size_t>(p.i)] + 1, col1[static_cast<size_t>(p.j)] + 1});
        for (size_t b = 0; b < e2.size(); ++b) {
            if (!e2[b].paired()) continue;
            bool matched = false;
            for (size_t x = 0; x < e1.size(); ++x)
                if (best_match[x] == static_cast<int>(b)) matched = true;
            if (!matched)
                a.structure.pairings.push_back({col2[static_cast<size_t>(e2[b].i)] + 1,
                                                col2[static_cast<size_t>(e2[b].j)] + 1});
        }
        std::sort(a.structure.pairings.begin(), a.structure.pairings.end());
        return a;
    }
};

} // namespace detail

/// Exact global minimum by exhaustive enumeration; the verification oracle
/// for the dynamic program at desk scale.
inline std::pair<Score, Alignment> brute_force_min_alignment(const FoldedSequence& fs1,
                                                             const FoldedSequence& fs2,
                                                             const ScoreScheme& scheme,
                                                             int size_limit = 16) {
    if (fs1.structure.type1() || fs2.structure.type1())
        fail(Errc::type_mismatch, "oracle inputs must be 0-sequences");
    if (fs1.size() + fs2.size() > size_limit)
        fail(Errc::too_large, "oracle limited to " + std::to_string(size_limit) + " total bases");
    detail::OracleSearch search(fs1, fs2, scheme);
    return search.run();
}

} // namespace pkalign

#endif
