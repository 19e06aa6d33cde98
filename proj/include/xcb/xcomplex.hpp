/**
 * Reduced n-crossed complexes over one object, their morphisms, homotopy
 * groups, the skeleton / truncation / coskeleton / cotruncation functors and
 * the model-structure predicates.
 *
 * Degrees are 1-based throughout. Every accessor accepts degrees beyond the
 * stored length and answers with the trivial group, so complexes of
 * different lengths compare and map into each other by implicit padding.
 */
#ifndef XCB_XCOMPLEX_HPP
#define XCB_XCOMPLEX_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xcb/core.hpp"
#include "xcb/fingroup.hpp"

namespace xcb {

class ReducedCrossedComplex {
public:
    /// The unital complex: one trivial group in degree 1.
    ReducedCrossedComplex() : groups_{FinGroup()} {}

    /**
     * groups[k-1] is C_k; boundaries[k-2] is ∂_k: C_k -> C_{k-1};
     * actions[k-2] is the action of C_1 on C_k. Only shapes are checked here;
     * the axioms are checked by validate_complex.
     */
    ReducedCrossedComplex(std::vector<FinGroup> groups, std::vector<GroupHom> boundaries,
                          std::vector<RightAction> actions)
        : groups_(std::move(groups)), bnd_(std::move(boundaries)), act_(std::move(actions))
    {
        if (groups_.empty())
            throw Error(Errc::DegreeMismatch, "a complex needs at least one group");
        const std::size_t n = groups_.size();
        if (bnd_.size() != n - 1 || act_.size() != n - 1)
            throw Error(Errc::DegreeMismatch, "length " + std::to_string(n) + " complex needs "
                                                  + std::to_string(n - 1) + " boundaries and actions");
        for (std::size_t k = 2; k <= n; ++k) {
            const auto& d = bnd_[k - 2];
            if (!(d.source() == groups_[k - 1]) || !(d.target() == groups_[k - 2]))
                throw Error(Errc::TargetMismatch, "boundary " + std::to_string(k) + " has wrong source or target");
            const auto& a = act_[k - 2];
            if (!(a.actor() == groups_[0]) || !(a.module() == groups_[k - 1]))
                throw Error(Errc::TargetMismatch, "action on degree " + std::to_string(k)
                                                      + " has wrong actor or module");
        }
    }

    /// The trivial complex of the given length.
    static ReducedCrossedComplex unit(std::size_t n = 1)
    {
        std::vector<FinGroup> g(n);
        std::vector<GroupHom> b;
        std::vector<RightAction> a;
        for (std::size_t k = 2; k <= n; ++k) {
            b.push_back(GroupHom::trivial(g[k - 1], g[k - 2]));
            a.push_back(RightAction::trivial(g[0], g[k - 1]));
        }
        return ReducedCrossedComplex(std::move(g), std::move(b), std::move(a));
    }

    std::size_t length() const noexcept { return groups_.size(); }

    FinGroup group(std::size_t k) const
    {
        if (k == 0)
            throw Error(Errc::DegreeOutOfRange, "degree 0");
        return k <= length() ? groups_[k - 1] : FinGroup();
    }

    /// ∂_k: C_k -> C_{k-1}; trivial outside [2, length].
    GroupHom boundary(std::size_t k) const
    {
        if (k < 2)
            throw Error(Errc::DegreeOutOfRange, "boundary out of degree " + std::to_string(k));
        if (k <= length())
            return bnd_[k - 2];
        return GroupHom::trivial(group(k), group(k - 1));
    }

    /// Action of C_1 on C_k, k >= 2; trivial above the length.
    RightAction action(std::size_t k) const
    {
        if (k < 2)
            throw Error(Errc::DegreeOutOfRange, "action table stored from degree 2");
        if (k <= length())
            return act_[k - 2];
        return RightAction::trivial(groups_[0], FinGroup());
    }

    /// a^x for a in C_k, x in C_1. Degree 1 is conjugation.
    Elem act(std::size_t k, Elem a, Elem x) const
    {
        if (k == 1)
            return groups_[0].conj(a, x);
        if (k > length())
            return a;
        return act_[k - 2](a, x);
    }

    const std::vector<FinGroup>& groups() const noexcept { return groups_; }

    friend bool operator==(const ReducedCrossedComplex& a, const ReducedCrossedComplex& b)
    {
        if (a.length() != b.length())
            return false;
        for (std::size_t k = 0; k < a.length(); ++k)
            if (!(a.groups_[k] == b.groups_[k]))
                return false;
        for (std::size_t k = 0; k + 1 < a.length(); ++k)
            if (a.bnd_[k].table() != b.bnd_[k].table() || a.act_[k].table() != b.act_[k].table())
                return false;
        return true;
    }

private:
    std::vector<FinGroup> groups_;
    std::vector<GroupHom> bnd_;
    std::vector<RightAction> act_;
};

inline ReducedCrossedComplex crossed_module(const GroupHom& d, const RightAction& action)
{
    return ReducedCrossedComplex({d.target(), d.source()}, {d}, {action});
}

/// G --id--> G with conjugation: the acyclic inner crossed module.
inline ReducedCrossedComplex inner_crossed_module(const FinGroup& g)
{
    return crossed_module(GroupHom::identity(g), RightAction::conjugation(g));
}

// --------------------------------------------------------------------------
// Morphisms

class ComplexMorphism {
public:
    ComplexMorphism() = default;

    /**
     * maps[k-1] is f_k. Fewer maps than max(length) may be given when every
     * missing degree has a trivial source or target (it is then the trivial
     * map); otherwise DegreeMismatch.
     */
    ComplexMorphism(ReducedCrossedComplex source, ReducedCrossedComplex target, std::vector<GroupHom> maps)
        : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps))
    {
        const std::size_t n = length();
        if (maps_.size() > n)
            throw Error(Errc::DegreeMismatch, std::to_string(maps_.size()) + " maps for length "
                                                  + std::to_string(n));
        for (std::size_t k = 1; k <= maps_.size(); ++k)
            if (!(maps_[k - 1].source() == source_.group(k)) || !(maps_[k - 1].target() == target_.group(k)))
                throw Error(Errc::DegreeMismatch, "map in degree " + std::to_string(k)
                                                      + " has wrong source or target");
        for (std::size_t k = maps_.size() + 1; k <= n; ++k) {
            auto s = source_.group(k), t = target_.group(k);
            if (!s.is_trivial() && !t.is_trivial())
                throw Error(Errc::DegreeMismatch, "no map given in degree " + std::to_string(k));
            maps_.push_back(GroupHom::trivial(s, t));
        }
    }

    static ComplexMorphism identity(const ReducedCrossedComplex& c)
    {
        std::vector<GroupHom> m;
        for (std::size_t k = 1; k <= c.length(); ++k)
            m.push_back(GroupHom::identity(c.group(k)));
        return ComplexMorphism(c, c, std::move(m));
    }

    static ComplexMorphism trivial(const ReducedCrossedComplex& s, const ReducedCrossedComplex& t)
    {
        std::vector<GroupHom> m;
        for (std::size_t k = 1; k <= std::max(s.length(), t.length()); ++k)
            m.push_back(GroupHom::trivial(s.group(k), t.group(k)));
        return ComplexMorphism(s, t, std::move(m));
    }

    std::size_t length() const noexcept { return std::max(source_.length(), target_.length()); }
    const ReducedCrossedComplex& source() const noexcept { return source_; }
    const ReducedCrossedComplex& target() const noexcept { return target_; }

    GroupHom map(std::size_t k) const
    {
        if (k == 0)
            throw Error(Errc::DegreeOutOfRange, "degree 0");
        if (k <= maps_.size())
            return maps_[k - 1];
        return GroupHom::trivial(source_.group(k), target_.group(k));
    }

    Elem operator()(std::size_t k, Elem a) const
    {
        return k <= maps_.size() ? maps_[k - 1](a) : target_.group(k).identity();
    }

    const std::vector<GroupHom>& maps() const noexcept { return maps_; }

    friend bool operator==(const ComplexMorphism& a, const ComplexMorphism& b)
    {
        if (!(a.source_ == b.source_) || !(a.target_ == b.target_))
            return false;
        for (std::size_t k = 1; k <= a.length(); ++k)
            if (a.map(k).table() != b.map(k).table())
                return false;
        return true;
    }

private:
    ReducedCrossedComplex source_;
    ReducedCrossedComplex target_;
    std::vector<GroupHom> maps_;
};

/// g ∘ f
inline ComplexMorphism compose(const ComplexMorphism& g, const ComplexMorphism& f)
{
    if (!(f.target() == g.source()))
        throw Error(Errc::TargetMismatch, "composition of non-composable morphisms");
    const std::size_t n = std::max({f.source().length(), g.target().length()});
    std::vector<GroupHom> m;
    for (std::size_t k = 1; k <= n; ++k) {
        auto s = f.source().group(k);
        auto t = g.target().group(k);
        std::vector<Elem> tab(s.order());
        for (Elem a = 0; a < s.order(); ++a)
            tab[a] = k <= f.length() && k <= g.length() ? g(k, f(k, a)) : t.identity();
        m.emplace_back(s, t, std::move(tab));
    }
    return ComplexMorphism(f.source(), g.target(), std::move(m));
}

// --------------------------------------------------------------------------
// Validation

/**
 * Checks the axioms of a reduced crossed complex. Check ids:
 *   Xc3  action laws on each C_k, k >= 2
 *   Xc4  boundaries are homomorphisms, consecutive composites vanish, and
 *        ∂_k is equivariant for k >= 3
 *   CM1  ∂_2(a^x) = x^-1 ∂_2(a) x
 *   CM2  a^{∂_2 b} = b^-1 a b on C_2
 *   Xc2  C_k abelian for k >= 3
 *   Xc5  ∂_2(C_2) acts trivially on C_k, k >= 3
 */
inline Report validate_complex(const ReducedCrossedComplex& c)
{
    Report r;
    const std::size_t n = c.length();
    const auto c1 = c.group(1);
    for (std::size_t k = 2; k <= n; ++k) {
        const auto ck = c.group(k);
        const auto K = std::to_string(k);
        if (auto v = c.action(k).violation())
            r.fail("Xc3 action C" + K, v->first + " " + v->second);
        else
            r.pass("Xc3 action C" + K);

        const auto d = c.boundary(k);
        if (auto w = d.hom_violation())
            r.fail("Xc4 boundary hom " + K, "a=" + ck.label(w->first) + " b=" + ck.label(w->second));
        else
            r.pass("Xc4 boundary hom " + K);

        if (k >= 3) {
            const auto dd = c.boundary(k - 1);
            std::optional<Elem> bad;
            for (Elem a = 0; a < ck.order() && !bad; ++a)
                if (dd(d(a)) != c.group(k - 2).identity())
                    bad = a;
            r.expect(!bad, "Xc4 chain " + K, bad ? "a=" + ck.label(*bad) : "");

            std::optional<std::pair<Elem, Elem>> ab;
            for (Elem a = 0; a < ck.order() && !ab; ++a)
                for (Elem b = 0; b < ck.order() && !ab; ++b)
                    if (ck.mul(a, b) != ck.mul(b, a))
                        ab = std::pair{a, b};
            r.expect(!ab, "Xc2 abelian C" + K, ab ? "a=" + ck.label(ab->first) + " b=" + ck.label(ab->second) : "");

            std::optional<std::pair<Elem, Elem>> eq;
            for (Elem a = 0; a < ck.order() && !eq; ++a)
                for (Elem x = 0; x < c1.order() && !eq; ++x)
                    if (d(c.act(k, a, x)) != c.act(k - 1, d(a), x))
                        eq = std::pair{a, x};
            r.expect(!eq, "Xc4 equivariance " + K,
                     eq ? "a=" + ck.label(eq->first) + " x=" + c1.label(eq->second) : "");

            const auto c2 = c.group(2);
            const auto d2 = c.boundary(2);
            std::optional<std::pair<Elem, Elem>> tr;
            for (Elem a = 0; a < ck.order() && !tr; ++a)
                for (Elem b = 0; b < c2.order() && !tr; ++b)
                    if (c.act(k, a, d2(b)) != a)
                        tr = std::pair{a, b};
            r.expect(!tr, "Xc5 trivial action C" + K,
                     tr ? "a=" + ck.label(tr->first) + " b=" + c2.label(tr->second) : "");
        }
        else {
            std::optional<std::pair<Elem, Elem>> eq;
            for (Elem a = 0; a < ck.order() && !eq; ++a)
                for (Elem x = 0; x < c1.order() && !eq; ++x)
                    if (d(c.act(2, a, x)) != c1.conj(d(a), x))
                        eq = std::pair{a, x};
            r.expect(!eq, "CM1 equivariance", eq ? "a=" + ck.label(eq->first) + " x=" + c1.label(eq->second) : "");

            std::optional<std::pair<Elem, Elem>> pf;
            for (Elem a = 0; a < ck.order() && !pf; ++a)
                for (Elem b = 0; b < ck.order() && !pf; ++b)
                    if (c.act(2, a, d(b)) != ck.conj(a, b))
                        pf = std::pair{a, b};
            r.expect(!pf, "CM2 Peiffer", pf ? "a=" + ck.label(pf->first) + " b=" + ck.label(pf->second) : "");
        }
    }
    return r;
}

/// Throws ValidationFailed with the first witness.
inline void require_valid(const ReducedCrossedComplex& c, const std::string& what = "complex")
{
    auto r = validate_complex(c);
    if (!r.ok())
        throw Error(Errc::ValidationFailed, what + ": " + r.failures().front().check + ": "
                                                + r.failures().front().witness);
}

/// Checks ids: "hom k", "square k" (δ_k f_k = f_{k-1} ∂_k), "equivariance k".
inline Report validate_morphism(const ComplexMorphism& f)
{
    Report r;
    const auto& C = f.source();
    const auto& D = f.target();
    const auto c1 = C.group(1);
    for (std::size_t k = 1; k <= f.length(); ++k) {
        const auto K = std::to_string(k);
        const auto fk = f.map(k);
        const auto ck = C.group(k);
        if (auto w = fk.hom_violation())
            r.fail("hom " + K, "a=" + ck.label(w->first) + " b=" + ck.label(w->second));
        else
            r.pass("hom " + K);
        if (k >= 2) {
            const auto d = C.boundary(k);
            const auto delta = D.boundary(k);
            const auto fk1 = f.map(k - 1);
            std::optional<Elem> bad;
            for (Elem a = 0; a < ck.order() && !bad; ++a)
                if (delta(fk(a)) != fk1(d(a)))
                    bad = a;
            r.expect(!bad, "square " + K, bad ? "a=" + ck.label(*bad) : "");

            std::optional<std::pair<Elem, Elem>> eq;
            for (Elem a = 0; a < ck.order() && !eq; ++a)
                for (Elem x = 0; x < c1.order() && !eq; ++x)
                    if (fk(C.act(k, a, x)) != D.act(k, fk(a), f(1, x)))
                        eq = std::pair{a, x};
            r.expect(!eq, "equivariance " + K, eq ? "a=" + ck.label(eq->first) + " x=" + c1.label(eq->second) : "");
        }
    }
    return r;
}

// --------------------------------------------------------------------------
// Homotopy groups

/// Z/B for cycles Z ⊆ C_k and boundaries B ⊆ Z.
struct Subquotient {
    FinGroup group;
    Subgroup cycles;
    Quotient quot;

    /// Class of a C_k element, or nothing if it is not a cycle.
    std::optional<Elem> class_of(Elem c) const
    {
        auto z = cycles.find(c);
        if (!z)
            return std::nullopt;
        return quot.projection(*z);
    }

    /// Least C_k element of a class.
    Elem representative(Elem cls) const { return cycles.inclusion(quot.representatives[cls]); }
    std::size_t order() const { return group.order(); }
};

/**
 * π_1 = C_1 / im ∂_2; π_k = ker ∂_k / im ∂_{k+1} for 2 <= k < n; π_n = ker ∂_n.
 * Degrees above the length give the trivial group.
 */
inline Subquotient homotopy_group(const ReducedCrossedComplex& c, std::size_t k)
{
    if (k == 0)
        throw Error(Errc::DegreeOutOfRange, "homotopy group in degree 0");
    const auto ck = c.group(k);
    std::vector<Elem> z = k == 1 ? ck.elements() : c.boundary(k).kernel_elements();
    auto cycles = subgroup(ck, z);
    std::vector<Elem> b;
    for (auto x : c.boundary(k + 1).image_elements()) {
        auto local = cycles.find(x);
        if (!local)
            throw Error(Errc::QuotientIllDefined, "boundary " + ck.label(x) + " is not a cycle");
        b.push_back(*local);
    }
    try {
        auto q = quotient(cycles.group, b);
        return {q.group, std::move(cycles), std::move(q)};
    }
    catch (const Error& e) {
        if (e.code() == Errc::NotNormal && k == 1)
            throw Error(Errc::ImageNotNormal, e.what());
        throw;
    }
}

/// π_k(f): π_k(C) -> π_k(D) on least representatives, checked to be well
/// defined on every cycle.
inline GroupHom induced_map(const ComplexMorphism& f, std::size_t k, const Subquotient& pc, const Subquotient& pd)
{
    const auto fk = f.map(k);
    std::vector<Elem> tab(pc.order());
    for (Elem cls = 0; cls < pc.order(); ++cls) {
        auto img = pd.class_of(fk(pc.representative(cls)));
        if (!img)
            throw Error(Errc::InducedMapIllDefined, "cycle maps to a non-cycle in degree " + std::to_string(k));
        tab[cls] = *img;
    }
    for (Elem z = 0; z < pc.cycles.order(); ++z) {
        auto c = pc.cycles.inclusion(z);
        auto img = pd.class_of(fk(c));
        if (!img || *img != tab[*pc.class_of(c)])
            throw Error(Errc::InducedMapIllDefined, "degree " + std::to_string(k) + " at "
                                                        + f.source().group(k).label(c));
    }
    return GroupHom(pc.group, pd.group, std::move(tab));
}

inline GroupHom induced_map(const ComplexMorphism& f, std::size_t k)
{
    return induced_map(f, k, homotopy_group(f.source(), k), homotopy_group(f.target(), k));
}

// --------------------------------------------------------------------------
// Model-structure predicates

/// One object: fibrations are the degreewise surjections.
inline bool is_fibration(const ComplexMorphism& f)
{
    for (std::size_t k = 1; k <= f.length(); ++k)
        if (!f.map(k).is_surjective())
            return false;
    return true;
}

inline bool is_weak_equivalence(const ComplexMorphism& f)
{
    for (std::size_t k = 1; k <= f.length(); ++k)
        if (!induced_map(f, k).is_bijective())
            return false;
    return true;
}

/**
 * u_k: C_k -> P_k, c |-> (∂c, f c), for k >= 2, where
 *   P_2 = C_1 ×_{D_1} D_2
 *   P_k = ker ∂_{k-1} ×_{ker δ_{k-1}} D_k   (k >= 3)
 * Degrees above the length use the trivial padding.
 */
struct ComparisonMap {
    FiberProduct pullback;
    std::optional<Subgroup> kernel; // ker ∂_{k-1} for k >= 3
    GroupHom u;
};

inline ComparisonMap comparison_map(const ComplexMorphism& f, std::size_t k, const Caps& caps = {})
{
    if (k < 2)
        throw Error(Errc::DegreeOutOfRange, "comparison map from degree 2");
    const auto& C = f.source();
    const auto& D = f.target();
    const auto d = C.boundary(k);
    const auto fk = f.map(k);
    std::optional<Subgroup> ker;
    GroupHom left;
    if (k == 2)
        left = f.map(1);
    else {
        ker = subgroup(C.group(k - 1), C.boundary(k - 1).kernel_elements());
        left = compose(f.map(k - 1), ker->inclusion);
    }
    auto pb = fiber_product(left, D.boundary(k), caps);
    const auto ck = C.group(k);
    std::vector<Elem> tab(ck.order());
    for (Elem c = 0; c < ck.order(); ++c) {
        Elem a = d(c);
        if (ker)
            a = *ker->find(a);
        auto p = pb.find(a, fk(c));
        if (!p)
            throw Error(Errc::ValidationFailed, "comparison map leaves the pullback in degree " + std::to_string(k)
                                                    + " at " + ck.label(c));
        tab[c] = *p;
    }
    GroupHom u(ck, pb.group(), std::move(tab));
    return {std::move(pb), std::move(ker), std::move(u)};
}

/**
 * f_1 surjective and u_k surjective for every k >= 2. Read in Xc (padded
 * with trivial groups) this means 2 <= k <= n+1, where n is the common
 * length. Read as n-complexes it means 2 <= k <= n with u_n bijective; the two
 * readings agree, and `as_n_complex` selects which one is evaluated.
 */
inline bool is_trivial_fibration(const ComplexMorphism& f, bool as_n_complex, const Caps& caps = {})
{
    if (!f.map(1).is_surjective())
        return false;
    const std::size_t n = f.length();
    if (as_n_complex && n == 1)
        return f.map(1).is_injective();
    for (std::size_t k = 2; k <= (as_n_complex ? n : n + 1); ++k) {
        auto cm = comparison_map(f, k, caps);
        if (!cm.u.is_surjective())
            return false;
        if (as_n_complex && k == n && !cm.u.is_injective())
            return false;
    }
    return true;
}

// --------------------------------------------------------------------------
// Products

struct ProductComplex {
    ReducedCrossedComplex complex;
    std::vector<ProductGroup> factors; // factors[k-1] is H_k × G_k
    ComplexMorphism proj1, proj2;

    /// (f, g): X -> H × G for morphisms sharing a source.
    ComplexMorphism pairing(const ComplexMorphism& f, const ComplexMorphism& g) const
    {
        if (!(f.source() == g.source()))
            throw Error(Errc::TargetMismatch, "pairing of morphisms with different sources");
        std::vector<GroupHom> m;
        for (std::size_t k = 1; k <= factors.size(); ++k)
            m.push_back(pairing_map(factors[k - 1], f.map(k), g.map(k)));
        return ComplexMorphism(f.source(), complex, std::move(m));
    }
};

inline ProductComplex product_complex(const ReducedCrossedComplex& h, const ReducedCrossedComplex& g,
                                      const Caps& caps = {})
{
    const std::size_t n = std::max(h.length(), g.length());
    std::vector<ProductGroup> f;
    for (std::size_t k = 1; k <= n; ++k)
        f.push_back(direct_product(h.group(k), g.group(k), caps));
    std::vector<FinGroup> groups;
    std::vector<GroupHom> bnd;
    std::vector<RightAction> act;
    for (std::size_t k = 1; k <= n; ++k)
        groups.push_back(f[k - 1].group);
    const auto& p1 = f[0];
    for (std::size_t k = 2; k <= n; ++k) {
        const auto& pk = f[k - 1];
        bnd.push_back(product_map(pk, f[k - 2], h.boundary(k), g.boundary(k)));
        std::vector<Elem> t(pk.group.order() * p1.group.order());
        for (Elem a = 0; a < pk.group.order(); ++a)
            for (Elem x = 0; x < p1.group.order(); ++x)
                t[a * p1.group.order() + x] = pk.pair(h.act(k, pk.first(a), p1.first(x)),
                                                      g.act(k, pk.second(a), p1.second(x)));
        act.emplace_back(p1.group, pk.group, std::move(t));
    }
    ReducedCrossedComplex hg(std::move(groups), std::move(bnd), std::move(act));
    std::vector<GroupHom> m1, m2;
    for (std::size_t k = 1; k <= n; ++k) {
        m1.push_back(f[k - 1].proj1);
        m2.push_back(f[k - 1].proj2);
    }
    ComplexMorphism pr1(hg, h, std::move(m1));
    ComplexMorphism pr2(hg, g, std::move(m2));
    return {std::move(hg), std::move(f), std::move(pr1), std::move(pr2)};
}

// --------------------------------------------------------------------------
// Reshaping

/// sk^m: the complex padded with trivial groups up to length m >= length.
inline ReducedCrossedComplex skeleton(const ReducedCrossedComplex& c, std::size_t m)
{
    if (m < c.length())
        throw Error(Errc::DegreeOutOfRange, "skeleton at " + std::to_string(m) + " below length "
                                                + std::to_string(c.length()));
    std::vector<FinGroup> g;
    std::vector<GroupHom> b;
    std::vector<RightAction> a;
    for (std::size_t k = 1; k <= m; ++k)
        g.push_back(c.group(k));
    for (std::size_t k = 2; k <= m; ++k) {
        b.push_back(c.boundary(k));
        a.push_back(k <= c.length() ? c.action(k) : RightAction::trivial(g[0], g[k - 1]));
    }
    return ReducedCrossedComplex(std::move(g), std::move(b), std::move(a));
}

/// tr_m: degrees above m dropped (padded when m exceeds the length).
inline ReducedCrossedComplex truncate(const ReducedCrossedComplex& c, std::size_t m)
{
    if (m == 0)
        throw Error(Errc::DegreeOutOfRange, "truncation at 0");
    if (m >= c.length())
        return skeleton(c, m);
    std::vector<FinGroup> g;
    std::vector<GroupHom> b;
    std::vector<RightAction> a;
    for (std::size_t k = 1; k <= m; ++k)
        g.push_back(c.group(k));
    for (std::size_t k = 2; k <= m; ++k) {
        b.push_back(c.boundary(k));
        a.push_back(c.action(k));
    }
    return ReducedCrossedComplex(std::move(g), std::move(b), std::move(a));
}

/// cosk^m: tr_m C with ker ∂_m (all of C_1 when m = 1) placed in degree m+1.
inline ReducedCrossedComplex coskeleton(const ReducedCrossedComplex& c, std::size_t m)
{
    auto t = truncate(c, m);
    const auto cm = c.group(m);
    auto ker = subgroup(cm, m == 1 ? cm.elements() : c.boundary(m).kernel_elements());
    std::vector<FinGroup> g(t.groups());
    std::vector<GroupHom> b;
    std::vector<RightAction> a;
    for (std::size_t k = 2; k <= m; ++k) {
        b.push_back(t.boundary(k));
        a.push_back(t.action(k));
    }
    g.push_back(ker.group);
    b.push_back(ker.inclusion);
    const auto c1 = c.group(1);
    std::vector<Elem> tab(ker.order() * c1.order());
    for (Elem z = 0; z < ker.order(); ++z)
        for (Elem x = 0; x < c1.order(); ++x) {
            auto img = ker.find(c.act(m, ker.inclusion(z), x));
            if (!img)
                throw Error(Errc::QuotientIllDefined, "kernel of boundary " + std::to_string(m)
                                                          + " is not action invariant");
            tab[z * c1.order() + x] = *img;
        }
    a.emplace_back(c1, ker.group, std::move(tab));
    return ReducedCrossedComplex(std::move(g), std::move(b), std::move(a));
}

/// cotr_m: degree m replaced by C_m / im ∂_{m+1}, degrees above dropped.
inline ReducedCrossedComplex cotruncate(const ReducedCrossedComplex& c, std::size_t m)
{
    if (m == 0)
        throw Error(Errc::DegreeOutOfRange, "cotruncation at 0");
    if (m >= c.length())
        return skeleton(c, m);
    const auto cm = c.group(m);
    const auto img = c.boundary(m + 1).image_elements();
    Quotient q;
    try {
        q = quotient(cm, img);
    }
    catch (const Error& e) {
        throw Error(Errc::QuotientIllDefined, e.what());
    }
    std::vector<FinGroup> g;
    for (std::size_t k = 1; k < m; ++k)
        g.push_back(c.group(k));
    g.push_back(q.group);
    std::vector<GroupHom> b;
    std::vector<RightAction> a;
    for (std::size_t k = 2; k < m; ++k) {
        b.push_back(c.boundary(k));
        a.push_back(c.action(k));
    }
    if (m >= 2) {
        const auto d = c.boundary(m);
        std::vector<Elem> tab(q.group.order());
        for (Elem cls = 0; cls < q.group.order(); ++cls)
            tab[cls] = d(q.representatives[cls]);
        for (Elem x = 0; x < cm.order(); ++x)
            if (tab[q.projection(x)] != d(x))
                throw Error(Errc::QuotientIllDefined, "boundary " + std::to_string(m) + " not constant on cosets");
        b.emplace_back(q.group, c.group(m - 1), std::move(tab));
        const auto c1 = c.group(1);
        std::vector<Elem> at(q.group.order() * c1.order());
        for (Elem y = 0; y < cm.order(); ++y)
            for (Elem x = 0; x < c1.order(); ++x) {
                auto v = q.projection(c.act(m, y, x));
                auto& slot = at[q.projection(y) * c1.order() + x];
                if (y == q.representatives[q.projection(y)])
                    slot = v;
                else if (slot != v)
                    throw Error(Errc::QuotientIllDefined, "action does not descend to the quotient in degree "
                                                              + std::to_string(m));
            }
        a.emplace_back(c1, q.group, std::move(at));
    }
    return ReducedCrossedComplex(std::move(g), std::move(b), std::move(a));
}

/// tr_m f: tr_m C -> tr_m D.
inline ComplexMorphism truncate_morphism(const ComplexMorphism& f, std::size_t m)
{
    std::vector<GroupHom> maps;
    for (std::size_t k = 1; k <= m; ++k)
        maps.push_back(f.map(k));
    return ComplexMorphism(truncate(f.source(), m), truncate(f.target(), m), std::move(maps));
}

/// The same maps read with a different (equal-valued) source or target, e.g.
/// a morphism into tr_m D re-read as a morphism into D.
inline ComplexMorphism retarget(const ComplexMorphism& f, const ReducedCrossedComplex& source,
                                const ReducedCrossedComplex& target)
{
    std::vector<GroupHom> maps;
    const std::size_t n = std::max(source.length(), target.length());
    for (std::size_t k = 1; k <= n; ++k) {
        auto s = source.group(k), t = target.group(k);
        if (!(s == f.source().group(k)) || !(t == f.target().group(k)))
            throw Error(Errc::DegreeMismatch, "retarget changes the group in degree " + std::to_string(k));
        maps.emplace_back(s, t, f.map(k).table());
    }
    return ComplexMorphism(source, target, std::move(maps));
}

// --------------------------------------------------------------------------
// Morphism enumeration

/**
 * Calls `visit` for every morphism C -> D (with trivial padding). Degrees are
 * filled bottom-up: f_1 over Hom(C_1, D_1), then each f_k among homs whose
 * generator images already satisfy the boundary square; full squares and
 * equivariance are checked before descending. `visit` returns false to stop.
 */
template <class Visit>
void for_each_morphism(const ReducedCrossedComplex& C, const ReducedCrossedComplex& D, Visit&& visit,
                       std::size_t& budget)
{
    const std::size_t n = std::max(C.length(), D.length());
    std::vector<FinGroup> cs, ds;
    std::vector<GeneratorTree> trees;
    for (std::size_t k = 1; k <= n; ++k) {
        cs.push_back(C.group(k));
        ds.push_back(D.group(k));
        trees.push_back(generator_tree(cs.back()));
    }
    std::vector<GroupHom> maps;
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (stop)
            return;
        if (k > n) {
            if (!visit(ComplexMorphism(C, D, maps)))
                stop = true;
            return;
        }
        const auto& ck = cs[k - 1];
        const auto& dk = ds[k - 1];
        std::optional<GroupHom> dC, dD;
        if (k >= 2) {
            dC = C.boundary(k);
            dD = D.boundary(k);
        }
        auto allow = [&](Elem gen, Elem y) {
            return k < 2 || (*dD)(y) == maps[k - 2]((*dC)(gen));
        };
        for_each_hom(
            ck, dk, trees[k - 1], allow,
            [&](GroupHom h) {
                if (k >= 2) {
                    for (Elem a = 0; a < ck.order(); ++a) {
                        if ((*dD)(h(a)) != maps[k - 2]((*dC)(a)))
                            return true;
                        for (Elem x = 0; x < cs[0].order(); ++x)
                            if (h(C.act(k, a, x)) != D.act(k, h(a), maps[0](x)))
                                return true;
                    }
                }
                maps.push_back(std::move(h));
                rec(k + 1);
                maps.pop_back();
                return !stop;
            },
            budget);
    };
    rec(1);
}

inline std::vector<ComplexMorphism> enumerate_morphisms(const ReducedCrossedComplex& C,
                                                        const ReducedCrossedComplex& D, const Caps& caps = {})
{
    std::vector<ComplexMorphism> out;
    std::size_t budget = caps.search;
    for_each_morphism(
        C, D,
        [&](ComplexMorphism f) {
            out.push_back(std::move(f));
            return true;
        },
        budget);
    return out;
}

} // namespace xcb

#endif
