#ifndef PKALIGN_GENERATORS_HPP
#define PKALIGN_GENERATORS_HPP

#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pkalign/interval.hpp"
#include "pkalign/structure.hpp"

namespace pkalign {

/// A grammar symbol: a small structure used to build larger ones by
/// composition. Element order and the non-paired slot pairs are precomputed
/// once so splitting evaluation does not re-derive them.
struct Generator {
    std::string name;
    Structure structure;
    int element_count = 0; // iota
    int leg1 = 0;          // bases in the (left) leg; for type 0 the whole structure
    int leg2 = -1;         // bases in the right leg, -1 for type 0
    std::vector<Element> elements;
    std::vector<std::pair<int, int>> nonpair_slots; // base index pairs (a<b) unpaired in the generator

    bool type1() const { return structure.type1(); }
    int bases() const { return structure.n; }
    int max_leg() const { return type1() ? std::max(leg1, leg2) : leg1; }
};

inline Generator make_generator(std::string name, Structure s) {
    if (s.n < 1) fail(Errc::out_of_range, "generator '" + name + "' has no bases");
    Generator g;
    g.name = std::move(name);
    g.elements = element_order(s);
    g.element_count = static_cast<int>(g.elements.size());
    g.leg1 = s.left_leg();
    g.leg2 = s.type1() ? s.right_leg() : -1;
    for (int a = 1; a <= s.n; ++a)
        for (int b = a + 1; b <= s.n; ++b)
            if (!s.has_pairing(a, b)) g.nonpair_slots.push_back({a, b});
    g.structure = std::move(s);
    return g;
}

/// The grammar: a set of generators plus the largest leg size m, which drives
/// the degree of the alignment polynomial.
struct GeneratorSet {
    std::vector<Generator> generators;
    int max_leg_bases = 0;

    const Generator* find(std::string_view name) const {
        for (const Generator& g : generators)
            if (g.name == name) return &g;
        return nullptr;
    }

    void add(Generator g) {
        if (find(g.name)) fail(Errc::parse_error, "duplicate generator '" + g.name + "'");
        max_leg_bases = std::max(max_leg_bases, g.max_leg());
        generators.push_back(std::move(g));
    }
};

/// The built-in generators. Nested structures need only concat, loop,
/// lconcat, rconcat and nest; the rest cover a wide range of pseudoknots.
inline GeneratorSet builtin_generator_set() {
    GeneratorSet set;
    auto add = [&](const char* name, int n, std::vector<Pairing> p, std::optional<int> gap) {
        set.add(make_generator(name, make_structure(n, std::move(p), gap)));
    };
    add("concat", 2, {}, std::nullopt);
    add("loop", 2, {{1, 2}}, std::nullopt);
    add("disconn", 2, {}, 1);
    add("lembed", 1, {}, 1);
    add("rembed", 1, {}, 0);
    add("lconcat", 3, {{2, 3}}, 2);
    add("rconcat", 3, {{1, 2}}, 1);
    add("linsert", 3, {{1, 3}}, 2);
    add("rinsert", 3, {{1, 3}}, 1);
    add("lwrap", 4, {{1, 3}, {2, 4}}, 3);
    add("rwrap", 4, {{1, 3}, {2, 4}}, 1);
    add("nest", 4, {{1, 4}, {2, 3}}, 2);
    add("cross", 4, {{1, 3}, {2, 4}}, 2);
    return set;
}

/// One interval per generator base, consecutive within each input interval;
/// for type 1 the first leg1 parts partition I and the rest partition J.
struct Splitting {
    std::vector<Interval> parts;
    friend bool operator==(const Splitting&, const Splitting&) = default;
};

enum class SplitMode { relaxed, strict_proper };

namespace detail {

template <class F>
inline void partitions_rec(int lo, int hi, int idx, int parts, bool allow_empty,
                           std::vector<Interval>& out, F& f) {
    if (idx == parts - 1) {
        if (!allow_empty && lo > hi) return;
        out[static_cast<size_t>(idx)] = Interval::make(lo, hi);
        f();
        return;
    }
    const int first = allow_empty ? lo - 1 : lo;
    const int last = allow_empty ? hi : hi - (parts - 1 - idx);
    for (int end = first; end <= last; ++end) {
        out[static_cast<size_t>(idx)] = Interval::make(lo, end);
        partitions_rec(end + 1, hi, idx + 1, parts, allow_empty, out, f);
    }
}

/// Enumerates partitions of I into `parts` consecutive (possibly empty)
/// intervals, writing them into out[base..base+parts) and calling f() per
/// completed assignment.
template <class F>
inline void for_each_partition(Interval I, int base, int parts, bool allow_empty,
                               std::vector<Interval>& out, F&& f) {
    if (parts == 0) {
        if (I.empty()) f();
        return;
    }
    if (I.empty()) {
        if (!allow_empty) return;
        for (int t = 0; t < parts; ++t) out[static_cast<size_t>(base + t)] = Interval::none();
        f();
        return;
    }
    std::vector<Interval> local(static_cast<size_t>(parts));
    auto emit = [&]() {
        for (int t = 0; t < parts; ++t) out[static_cast<size_t>(base + t)] = local[static_cast<size_t>(t)];
        f();
    };
    partitions_rec(I.lo, I.hi, 0, parts, allow_empty, local, emit);
}

} // namespace detail

/// Pairings of s whose ends fall into two different intervals of the
/// splitting that are not paired in the generator. These are the pairings a
/// decomposition step deletes (and the aligner charges as R costs).
inline std::vector<Pairing> incompatible_pairings(const Structure& s, const Splitting& split,
                                                  const Generator& g) {
    auto part_of = [&](int p) -> int {
        for (size_t t = 0; t < split.parts.size(); ++t)
            if (split.parts[t].contains(p)) return static_cast<int>(t) + 1;
        return 0;
    };
    std::vector<Pairing> out;
    for (const Pairing& p : s.pairings) {
        const int a = part_of(p.i), b = part_of(p.j);
        if (a == 0 || b == 0 || a == b) continue;
        if (!g.structure.has_pairing(std::min(a, b), std::max(a, b))) out.push_back(p);
    }
    return out;
}

namespace detail {

/// Proper splitting test: each interval keeps an unpaired base or an end of a
/// compatible pairing once incompatible pairings are removed.
inline bool splitting_is_proper(const Structure& s, const std::vector<Interval>& parts,
                                const Generator& g) {
    auto part_of = [&](int p) -> int {
        for (size_t t = 0; t < parts.size(); ++t)
            if (parts[t].contains(p)) return static_cast<int>(t) + 1;
        return 0;
    };
    for (size_t t = 0; t < parts.size(); ++t) {
        const Interval& iv = parts[t];
        bool content = false;
        for (int p = iv.lo; p <= iv.hi && !content; ++p) {
            const int q = s.partner(p);
            if (q == 0) {
                content = true;
            } else {
                const int u = part_of(q);
                if (u == static_cast<int>(t) + 1 ||
                    (u != 0 && g.structure.has_pairing(std::min<int>(static_cast<int>(t) + 1, u),
                                                       std::max<int>(static_cast<int>(t) + 1, u))))
                    content = true;
            }
        }
        if (!content) return false;
    }
    return true;
}

template <class F>
inline void for_each_splitting(const Generator& g, const Structure& s, Interval I,
                               std::optional<Interval> J, SplitMode mode, F&& f) {
    if (g.type1() != J.has_value())
        fail(Errc::wrong_type, "generator type does not match the interval arguments");
    const bool allow_empty = mode == SplitMode::relaxed;
    std::vector<Interval> parts(static_cast<size_t>(g.bases()));
    auto check_emit = [&]() {
        if (mode == SplitMode::strict_proper && !splitting_is_proper(s, parts, g)) return;
        f(parts);
    };
    if (g.type1()) {
        for_each_partition(I, 0, g.leg1, allow_empty, parts, [&]() {
            for_each_partition(*J, g.leg1, g.leg2, allow_empty, parts, check_emit);
        });
    } else {
        for_each_partition(I, 0, g.bases(), allow_empty, parts, check_emit);
    }
}

} // namespace detail

/// All gap-respecting splittings of the interval(s) for the generator. In
/// strict-proper mode intervals are non-empty and pass the propriety test; in
/// relaxed mode empty intervals are allowed and filtering is the consumer's
/// progress guard.
inline std::vector<Splitting> enumerate_splittings(const Generator& g, const Structure& s,
                                                   Interval I, std::optional<Interval> J,
                                                   SplitMode mode) {
    std::vector<Splitting> out;
    detail::for_each_splitting(g, s, I, J, mode,
                               [&](const std::vector<Interval>& parts) { out.push_back({parts}); });
    return out;
}

/// A witness for decomposability: leaves are identities, inner nodes name a
/// generator with the splitting used and one child per structural element.
struct DecompositionTree {
    enum class Leaf { none, id0, id1 };
    Leaf leaf = Leaf::none;
    std::string generator;
    Structure gen_structure;
    Splitting splitting;
    std::vector<DecompositionTree> children;
};

inline Structure evaluate(const DecompositionTree& t) {
    if (t.leaf == DecompositionTree::Leaf::id0) return id0();
    if (t.leaf == DecompositionTree::Leaf::id1) return id1();
    std::vector<Structure> kids;
    kids.reserve(t.children.size());
    for (const DecompositionTree& c : t.children) kids.push_back(evaluate(c));
    return compose_all(t.gen_structure, kids);
}

inline std::string render(const DecompositionTree& t) {
    if (t.leaf == DecompositionTree::Leaf::id0) return "id0";
    if (t.leaf == DecompositionTree::Leaf::id1) return "id1";
    std::string out = t.generator + "(";
    for (size_t c = 0; c < t.children.size(); ++c) {
        if (c) out += ",";
        out += render(t.children[c]);
    }
    return out + ")";
}

namespace detail {

/// Memoized parser for generator decomposability over interval subproblems.
/// Splittings are strict (no empty intervals) and must leave no incompatible
/// pairing, since composition cannot delete anything.
class Decomposer {
public:
    Decomposer(const Structure& s, const GeneratorSet& gamma) : s_(s), gamma_(gamma) {
        partner_.assign(static_cast<size_t>(s.n) + 1, 0);
        for (const Pairing& p : s.pairings) {
            partner_[static_cast<size_t>(p.i)] = p.j;
            partner_[static_cast<size_t>(p.j)] = p.i;
        }
    }

    std::optional<DecompositionTree> run() {
        if (is_empty(s_)) return std::nullopt;
        if (is_id0(s_)) return leaf(DecompositionTree::Leaf::id0);
        if (is_id1(s_)) return leaf(DecompositionTree::Leaf::id1);
        if (!s_.type1()) return decomp0(Interval::make(1, s_.n));
        return decomp1(Interval::make(1, s_.left_leg()), Interval::make(s_.left_leg() + 1, s_.n));
    }

private:
    static DecompositionTree leaf(DecompositionTree::Leaf kind) {
        DecompositionTree t;
        t.leaf = kind;
        return t;
    }

    bool exits_scope(Interval I, Interval J) const {
        for (int p = 1; p <= s_.n; ++p) {
            if (!I.contains(p) && !J.contains(p)) continue;
            const int q = partner_[static_cast<size_t>(p)];
            if (q != 0 && !I.contains(q) && !J.contains(q)) return true;
        }
        return false;
    }

    std::optional<DecompositionTree> decomp0(Interval I) {
        if (I.empty()) return std::nullopt;
        if (auto it = memo0_.find(I); it != memo0_.end()) return it->second;
        std::optional<DecompositionTree> result;
        if (exits_scope(I, Interval::none())) {
            // a pairing leaves the subproblem: no exact recomposition exists
        } else if (I.single() && partner_[static_cast<size_t>(I.lo)] == 0) {
            result = leaf(DecompositionTree::Leaf::id0);
        } else {
            for (const Generator& g : gamma_.generators) {
                if (g.type1()) continue;
                if (try_generator(g, I, Interval::none(), result)) break;
            }
        }
        memo0_.emplace(I, result);
        return result;
    }

    std::optional<DecompositionTree> decomp1(Interval I, Interval J) {
        if (I.empty() && J.empty()) return std::nullopt;
        const auto key = std::make_pair(I, J);
        if (auto it = memo1_.find(key); it != memo1_.end()) return it->second;
        std::optional<DecompositionTree> result;
        if (exits_scope(I, J)) {
            // as above
        } else if (I.single() && J.single() && partner_[static_cast<size_t>(I.lo)] == J.lo) {
            result = leaf(DecompositionTree::Leaf::id1);
        } else {
            for (const Generator& g : gamma_.generators) {
                if (!g.type1()) continue;
                if (try_generator(g, I, J, result)) break;
            }
        }
        memo1_.emplace(key, result);
        return result;
    }

    /// Tries every strict splitting of (I,J) for g; fills `result` and
    /// returns true on the first success.
    bool try_generator(const Generator& g, Interval I, Interval J,
                       std::optional<DecompositionTree>& result) {
        bool found = false;
        auto consider = [&](const std::vector<Interval>& parts) {
            if (found) return;
            // identity-shaped generators would recurse into the same
            // subproblem; skip the self transition
            if (g.element_count == 1) {
                const Element& e = g.elements[0];
                if (!g.type1() && !e.paired() && parts[0] == I) return;
                if (g.type1() && e.paired() && parts[static_cast<size_t>(e.pos) - 1] == I &&
                    parts[static_cast<size_t>(e.partner) - 1] == J)
                    return;
            }
            if (!compatible(parts, g)) return;
            std::vector<DecompositionTree> kids;
            for (const Element& e : g.elements) {
                std::optional<DecompositionTree> kid;
                if (e.paired())
                    kid = decomp1(parts[static_cast<size_t>(e.pos) - 1],
                                  parts[static_cast<size_t>(e.partner) - 1]);
                else
                    kid = decomp0(parts[static_cast<size_t>(e.pos) - 1]);
                if (!kid) return;
                kids.push_back(std::move(*kid));
            }
            DecompositionTree node;
            node.generator = g.name;
            node.gen_structure = g.structure;
            node.splitting = Splitting{parts};
            node.children = std::move(kids);
            result = std::move(node);
            found = true;
        };
        detail::for_each_splitting(g, s_, I, g.type1() ? std::optional<Interval>(J) : std::nullopt,
                                   SplitMode::strict_proper, consider);
        return found;
    }

    /// True iff every pairing inside the splitting scope stays within one
    /// interval or follows a pairing of the generator.
    bool compatible(const std::vector<Interval>& parts, const Generator& g) const {
        auto part_of = [&](int p) -> int {
            for (size_t t = 0; t < parts.size(); ++t)
                if (parts[t].contains(p)) return static_cast<int>(t) + 1;
            return 0;
        };
        for (const Pairing& p : s_.pairings) {
            const int a = part_of(p.i), b = part_of(p.j);
            if (a == 0 && b == 0) continue;
            if (a == 0 || b == 0) return false; // exits the scope
            if (a == b) continue;
            if (!g.structure.has_pairing(std::min(a, b), std::max(a, b))) return false;
        }
        return true;
    }

    const Structure& s_;
    const GeneratorSet& gamma_;
    std::vector<int> partner_;
    std::map<Interval, std::optional<DecompositionTree>> memo0_;
    std::map<std::pair<Interval, Interval>, std::optional<DecompositionTree>> memo1_;
};

} // namespace detail

/// Parses s against the grammar; returns a witness tree whose evaluation
/// reproduces s exactly, or nothing if s is not decomposable.
inline std::optional<DecompositionTree> decompose(const Structure& s, const GeneratorSet& gamma) {
    return detail::Decomposer(s, gamma).run();
}

inline bool is_decomposable(const Structure& s, const GeneratorSet& gamma) {
    return decompose(s, gamma).has_value();
}

/// Generator definition file: one generator per line,
///   name n gap i:j,i:j,...
/// with `-` as the gap for type 0 and the pairing list optional.
inline std::vector<Generator> parse_generator_file(std::istream& in) {
    std::vector<Generator> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name) || name[0] == '#') continue;
        auto bad = [&](const std::string& why) {
            fail(Errc::parse_error, "generators:" + std::to_string(lineno) + ": " + why);
        };
        int n = 0;
        std::string gaptok, pairtok;
        if (!(ls >> n >> gaptok)) bad("expected `name n gap [pairs]`");
        std::optional<int> gap;
        if (gaptok != "-") {
            try {
                gap = std::stoi(gaptok);
            } catch (const std::exception&) {
                bad("gap must be an integer or '-'");
            }
        }
        std::vector<Pairing> pairings;
        if (ls >> pairtok && pairtok != "-") {
            std::istringstream ps(pairtok);
            std::string item;
            while (std::getline(ps, item, ',')) {
                const auto colon = item.find(':');
                if (colon == std::string::npos) bad("pairing must look like i:j");
                try {
                    pairings.push_back(
                        {std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
                } catch (const std::exception&) {
                    bad("pairing must look like i:j");
                }
            }
        }
        try {
            out.push_back(make_generator(name, make_structure(n, std::move(pairings), gap)));
        } catch (const Error& e) {
            bad(e.what());
        }
    }
    return out;
}

} // namespace pkalign

#endif
