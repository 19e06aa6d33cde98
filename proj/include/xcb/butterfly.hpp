/**
 * n-butterflies (E, p, f, α, β) between length-n complexes H and G, their
 * folded complexes E*, butterflies built from derived morphisms, morphisms
 * of butterflies (Θ, φ) and connected components of finite butterfly sets.
 */
#ifndef XCB_BUTTERFLY_HPP
#define XCB_BUTTERFLY_HPP

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "xcb/homotopy.hpp"
#include "xcb/pushout.hpp"

namespace xcb {

/**
 *          H_n            G_n
 *            \α          β/
 *             E_{n-1} ... E_1
 *            /p          f\
 *     tr H_{n-1}        tr G_{n-1}
 */
struct NButterfly {
    std::size_t n = 0;
    ReducedCrossedComplex H, G, E;
    ComplexMorphism p, f; ///< E -> tr_{n-1} H, E -> tr_{n-1} G
    GroupHom alpha, beta; ///< H_n -> E_{n-1}, G_n -> E_{n-1}

    bool operator==(const NButterfly&) const = default;
};

namespace detail {

inline std::string elem_witness(const std::string& name, const FinGroup& g, Elem x)
{
    return name + "=" + g.label(x);
}

/// First x with a(x) != b(x), as a witness.
inline std::optional<Elem> differ(const GroupHom& a, const GroupHom& b)
{
    for (Elem x = 0; x < a.source().order(); ++x)
        if (a(x) != b(x))
            return x;
    return std::nullopt;
}

} // namespace detail

/**
 * Per-axiom report: check names start with B1..B4.
 *   B1  E is a reduced (n-1)-complex, p and f are morphisms
 *   B2  exactness of G_n -> E_{n-1} -> pullback and surjectivity below,
 *       with the consequences p_{n-1}∘β = 1 and η∘β = 1
 *   B3  the diagonals are complexes and the wings commute:
 *       η∘α = 1, f∘α = 1, p∘α = ∂_n, f∘β = δ_n, α and β images commute
 *   B4  α and β are equivariant over p_1 and f_1
 */
inline Report validate_butterfly(const NButterfly& b, const Caps& caps = {})
{
    Report r;
    const std::size_t n = b.n;
    if (n < 2) {
        r.fail("B1 shape", "n=" + std::to_string(n));
        return r;
    }
    const auto em = b.E.group(n - 1);
    const auto hn = b.H.group(n);
    const auto gn = b.G.group(n);
    const bool shape = b.E.length() <= n - 1 && b.p.source() == b.E && b.f.source() == b.E
                       && b.p.target() == truncate(b.H, n - 1) && b.f.target() == truncate(b.G, n - 1)
                       && b.alpha.source() == hn && b.alpha.target() == em && b.beta.source() == gn
                       && b.beta.target() == em;
    r.expect(shape, "B1 shape", "components do not fit the butterfly shape");
    if (!shape)
        return r;
    r.merge(validate_complex(b.E), "B1 E: ");
    r.merge(validate_morphism(b.p), "B1 p: ");
    r.merge(validate_morphism(b.f), "B1 f: ");
    r.expect(b.alpha.is_homomorphism(), "B1 alpha hom", "alpha is not a homomorphism");
    r.expect(b.beta.is_homomorphism(), "B1 beta hom", "beta is not a homomorphism");
    if (!r.ok())
        return r;

    r.merge(exactness_report(b.p, b.beta, n, "B2", caps));
    const auto pm = b.p.map(n - 1);
    const auto fm = b.f.map(n - 1);
    auto pb = compose(pm, b.beta);
    auto bad = detail::differ(pb, GroupHom::trivial(gn, b.H.group(n - 1)));
    r.expect(!bad, "B2 p*beta trivial", bad ? detail::elem_witness("y", gn, *bad) : "");

    const auto& ps = b.H;
    const auto& gs = b.G;
    if (n >= 3) {
        const auto eta = b.E.boundary(n - 1);
        auto ea = detail::differ(compose(eta, b.alpha), GroupHom::trivial(hn, b.E.group(n - 2)));
        r.expect(!ea, "B3 eta*alpha trivial", ea ? detail::elem_witness("x", hn, *ea) : "");
        auto eb = detail::differ(compose(eta, b.beta), GroupHom::trivial(gn, b.E.group(n - 2)));
        r.expect(!eb, "B2 eta*beta trivial", eb ? detail::elem_witness("y", gn, *eb) : "");
    }
    auto fa = detail::differ(compose(fm, b.alpha), GroupHom::trivial(hn, gs.group(n - 1)));
    r.expect(!fa, "B3 f*alpha trivial", fa ? detail::elem_witness("x", hn, *fa) : "");
    auto pa = detail::differ(compose(pm, b.alpha), ps.boundary(n));
    r.expect(!pa, "B3 p*alpha=boundary", pa ? detail::elem_witness("x", hn, *pa) : "");
    auto fb = detail::differ(compose(fm, b.beta), gs.boundary(n));
    r.expect(!fb, "B3 f*beta=boundary", fb ? detail::elem_witness("y", gn, *fb) : "");
    std::string cw;
    for (Elem x = 0; x < hn.order() && cw.empty(); ++x)
        for (Elem y = 0; y < gn.order() && cw.empty(); ++y)
            if (em.mul(b.alpha(x), b.beta(y)) != em.mul(b.beta(y), b.alpha(x)))
                cw = "x=" + hn.label(x) + " y=" + gn.label(y);
    r.expect(cw.empty(), "B3 images commute", cw);

    const auto e1 = b.E.group(1);
    const auto p1 = b.p.map(1);
    const auto f1 = b.f.map(1);
    std::string aw, bw;
    for (Elem a = 0; a < e1.order(); ++a) {
        for (Elem x = 0; x < hn.order() && aw.empty(); ++x)
            if (b.alpha(ps.act(n, x, p1(a))) != b.E.act(n - 1, b.alpha(x), a))
                aw = "x=" + hn.label(x) + " a=" + e1.label(a);
        for (Elem y = 0; y < gn.order() && bw.empty(); ++y)
            if (b.beta(gs.act(n, y, f1(a))) != b.E.act(n - 1, b.beta(y), a))
                bw = "y=" + gn.label(y) + " a=" + e1.label(a);
    }
    r.expect(aw.empty(), "B4 alpha equivariant", aw);
    r.expect(bw.empty(), "B4 beta equivariant", bw);
    return r;
}

// --------------------------------------------------------------------------
// Folding

/// E* = [H_n × G_n -α×β-> E_{n-1} -> ... -> E_1] with p*, f*.
struct FoldedButterfly {
    ReducedCrossedComplex estar;
    ComplexMorphism pstar, fstar;
    ProductGroup top;
};

/// FoldInvalid if α×β is not a homomorphism or E* fails validation.
inline FoldedButterfly fold(const NButterfly& b, const Caps& caps = {})
{
    const std::size_t n = b.n;
    const auto hn = b.H.group(n);
    const auto gn = b.G.group(n);
    const auto em = b.E.group(n - 1);
    const auto e1 = b.E.group(1);
    auto top = direct_product(hn, gn, caps);
    std::vector<Elem> bt(top.group.order());
    for (Elem z = 0; z < bt.size(); ++z)
        bt[z] = em.mul(b.alpha(top.first(z)), b.beta(top.second(z)));
    GroupHom bd(top.group, em, std::move(bt));
    if (!bd.is_homomorphism())
        throw Error(Errc::FoldInvalid, "alpha x beta is not a homomorphism");
    std::vector<Elem> at(top.group.order() * e1.order());
    const auto p1 = b.p.map(1);
    const auto f1 = b.f.map(1);
    for (Elem z = 0; z < top.group.order(); ++z)
        for (Elem e = 0; e < e1.order(); ++e)
            at[z * e1.order() + e]
                = top.pair(b.H.act(n, top.first(z), p1(e)), b.G.act(n, top.second(z), f1(e)));

    std::vector<FinGroup> groups;
    std::vector<GroupHom> bnd;
    std::vector<RightAction> act;
    for (std::size_t k = 1; k <= n - 1; ++k)
        groups.push_back(b.E.group(k));
    for (std::size_t k = 2; k <= n - 1; ++k) {
        bnd.push_back(b.E.boundary(k));
        act.push_back(b.E.action(k));
    }
    groups.push_back(top.group);
    bnd.push_back(bd);
    act.emplace_back(e1, top.group, std::move(at));
    ReducedCrossedComplex estar(std::move(groups), std::move(bnd), std::move(act));
    auto r = validate_complex(estar);
    if (!r.ok())
        throw Error(Errc::FoldInvalid, r.failures().front().check + " at " + r.failures().front().witness);

    std::vector<GroupHom> pm, fm;
    for (std::size_t k = 1; k <= n - 1; ++k) {
        pm.emplace_back(estar.group(k), b.H.group(k), b.p.map(k).table());
        fm.emplace_back(estar.group(k), b.G.group(k), b.f.map(k).table());
    }
    pm.push_back(top.proj1);
    fm.push_back(top.proj2);
    ComplexMorphism ps(estar, b.H, std::move(pm));
    ComplexMorphism fs(estar, b.G, std::move(fm));
    return {std::move(estar), std::move(ps), std::move(fs), std::move(top)};
}

/**
 * p*: E* -> H is a trivial fibration, with the top comparison map
 * H_n × G_n -> ker η_{n-1} ×_{ker ∂_{n-1}} H_n an isomorphism. On failure the
 * B2 exactness findings are included as witnesses.
 */
inline Report check_fold_trivial_fibration(const NButterfly& b, const Caps& caps = {})
{
    Report r;
    std::optional<FoldedButterfly> fb;
    try {
        fb = fold(b, caps);
        r.pass("fold valid");
    }
    catch (const Error& e) {
        r.fail("fold valid", e.what());
    }
    if (fb) {
        r.merge(validate_morphism(fb->pstar), "fold p*: ");
        r.merge(validate_morphism(fb->fstar), "fold f*: ");
        if (r.ok()) {
            auto u = comparison_map(fb->pstar, b.n, caps).u;
            r.expect(u.is_bijective(), "top comparison iso",
                     "orders " + std::to_string(u.source().order()) + " -> " + std::to_string(u.target().order())
                         + ", kernel " + std::to_string(u.kernel_elements().size()));
            r.expect(is_trivial_fibration(fb->pstar, true, caps), "trivial fibration p*",
                     "a comparison map fails surjectivity");
        }
    }
    if (!r.ok())
        r.merge(exactness_report(b.p, b.beta, b.n, "B2", caps));
    return r;
}

// --------------------------------------------------------------------------
// Butterflies from derived morphisms

/// B^f = (tr_{n-1} Q^∇, π_1ρ, π_2ρ, x |-> [1,(x,1)], y |-> [1,(1,y)]).
inline NButterfly butterfly_from_diagonal(const DiagonalPushout& dp)
{
    const std::size_t n = dp.pushout.n;
    NButterfly b;
    b.n = n;
    b.H = dp.p.target();
    b.G = dp.f.target();
    b.E = truncate(dp.pushout.complex, n - 1);
    b.p = truncate_morphism(dp.proj1_rho, n - 1);
    b.f = truncate_morphism(dp.proj2_rho, n - 1);
    b.alpha = dp.alpha;
    b.beta = dp.beta;
    return b;
}

inline NButterfly butterfly_from_derived(const ComplexMorphism& p, const ComplexMorphism& f, const Caps& caps = {})
{
    return butterfly_from_diagonal(diagonal_pushout(p, f, caps));
}

namespace detail {

/// cotr_{n-1}(l) is the identity below n-1 and an isomorphism in degree n-1.
inline bool cotruncation_iso(const ComplexMorphism& l, std::size_t n)
{
    const auto& Q = l.source();
    const auto& E = l.target();
    for (std::size_t k = 1; k + 2 <= n; ++k)
        if (!(Q.group(k) == E.group(k)) || !(l.map(k) == GroupHom::identity(Q.group(k))))
            return false;
    auto qa = quotient(Q.group(n - 1), Q.boundary(n).image_elements());
    auto qb = quotient(E.group(n - 1), E.boundary(n).image_elements());
    if (qa.group.order() != qb.group.order())
        return false;
    const auto lm = l.map(n - 1);
    std::vector<Elem> t(qa.group.order());
    for (Elem c = 0; c < t.size(); ++c)
        t[c] = qb.projection(lm(qa.representatives[c]));
    return GroupHom(qa.group, qb.group, std::move(t)).is_bijective();
}

} // namespace detail

/**
 * Whether B is a butterfly over Q along p: some l: Q -> E* with p*∘l = p has
 * cotr_{n-1}(l) an isomorphism in degree n-1 and the identity below. With a
 * given lift only that lift is tested; otherwise morphisms Q -> E* are
 * searched under caps.search (SearchCapExceeded when exhausted).
 */
inline bool is_over_Q(const NButterfly& b, const ComplexMorphism& p,
                      const std::optional<ComplexMorphism>& lift = std::nullopt, const Caps& caps = {})
{
    if (!(p.target() == b.H))
        throw Error(Errc::TargetMismatch, "p does not land in the butterfly's H");
    auto fb = fold(b, caps);
    auto over = [&](const ComplexMorphism& l) {
        return l.source() == p.source() && l.target() == fb.estar && validate_morphism(l).ok()
               && compose(fb.pstar, l) == p && detail::cotruncation_iso(l, b.n);
    };
    if (lift)
        return over(retarget(*lift, lift->source(), fb.estar));
    bool found = false;
    std::size_t budget = caps.search;
    for_each_morphism(
        p.source(), fb.estar,
        [&](ComplexMorphism l) {
            found = over(l);
            return !found;
        },
        budget);
    return found;
}

// --------------------------------------------------------------------------
// Morphisms of butterflies

/// Θ: E -> E' (iso in degree n-1, identity below) with φ witnessing f ≃ f'∘Θ.
struct ButterflyMorphism {
    NButterfly source, target;
    ComplexMorphism theta;
    PointedHomotopy phi; ///< base f'∘Θ, derived f
};

inline bool same_morphism(const ButterflyMorphism& a, const ButterflyMorphism& b)
{
    return a.source == b.source && a.target == b.target && a.theta == b.theta && a.phi.phi == b.phi.phi;
}

inline Report validate_butterfly_morphism(const ButterflyMorphism& m, HomotopyKind kind = HomotopyKind::Weak)
{
    Report r;
    const auto& s = m.source;
    const auto& t = m.target;
    const std::size_t n = s.n;
    const bool ends = n == t.n && s.H == t.H && s.G == t.G && m.theta.source() == s.E && m.theta.target() == t.E;
    r.expect(ends, "ends", "source and target butterflies do not share H, G and n");
    if (!ends)
        return r;
    r.merge(validate_morphism(m.theta), "theta: ");
    std::optional<std::size_t> below;
    for (std::size_t k = 1; k + 2 <= n && !below; ++k)
        if (!(m.theta.map(k) == GroupHom::identity(s.E.group(k))))
            below = k;
    r.expect(!below, "theta identity below", below ? "degree " + std::to_string(*below) : "");
    const auto tm = m.theta.map(n - 1);
    r.expect(tm.is_bijective(), "theta iso", "degree " + std::to_string(n - 1) + " map is not bijective");
    auto wp = detail::differ(s.p.map(n - 1), compose(t.p.map(n - 1), tm));
    for (std::size_t k = 1; k + 2 <= n && !wp; ++k)
        if (!(s.p.map(k) == compose(t.p.map(k), m.theta.map(k))))
            wp = 0;
    r.expect(!wp, "wing p", wp ? "p and p'*theta differ" : "");
    auto wa = detail::differ(compose(tm, s.alpha), t.alpha);
    r.expect(!wa, "wing alpha", wa ? detail::elem_witness("x", s.H.group(n), *wa) : "");
    auto wb = detail::differ(compose(tm, s.beta), t.beta);
    r.expect(!wb, "wing beta", wb ? detail::elem_witness("y", s.G.group(n), *wb) : "");
    auto base = compose(t.f, m.theta);
    bool hom = m.phi.base == base && m.phi.derived == s.f && validate_homotopy(s.f, base, m.phi.phi, kind);
    r.expect(hom, "homotopy", "phi does not witness f = f'*theta");
    return r;
}

inline ButterflyMorphism identity_butterfly_morphism(const NButterfly& b)
{
    return {b, b, ComplexMorphism::identity(b.E), identity_homotopy(b.f)};
}

/// m2 ∘ m1 = (Θ²Θ¹, (φ²Θ¹) * φ¹).
inline ButterflyMorphism compose_butterfly_morphisms(const ButterflyMorphism& m2, const ButterflyMorphism& m1)
{
    if (!(m1.target == m2.source))
        throw Error(Errc::NotChainable, "butterfly morphisms do not chain");
    auto theta = compose(m2.theta, m1.theta);
    auto phi = compose_homotopies(precompose(m2.phi, m1.theta), m1.phi);
    phi.base = compose(m2.target.f, theta);
    return {m1.source, m2.target, std::move(theta), std::move(phi)};
}

/// (Θ^-1, φ^-1): f' ≃ f∘Θ^-1.
inline ButterflyMorphism invert_butterfly_morphism(const ButterflyMorphism& m)
{
    const std::size_t n = m.source.n;
    std::vector<GroupHom> maps;
    for (std::size_t k = 1; k + 2 <= n; ++k)
        maps.push_back(GroupHom::identity(m.target.E.group(k)));
    const auto tm = m.theta.map(n - 1);
    if (!tm.is_bijective())
        throw Error(Errc::PreconditionFailed, "theta is not invertible in degree " + std::to_string(n - 1));
    maps.push_back(tm.inverse());
    ComplexMorphism inv(m.target.E, m.source.E, std::move(maps));
    auto phi = invert_homotopy(precompose(m.phi, inv));
    // f'∘Θ∘Θ^-1 is f' itself
    phi.derived = m.target.f;
    return {m.target, m.source, std::move(inv), std::move(phi)};
}

/// E* -> E'*: Θ below n, the identity on H_n × G_n.
inline ComplexMorphism fold_morphism(const ButterflyMorphism& m, const Caps& caps = {})
{
    auto a = fold(m.source, caps);
    auto b = fold(m.target, caps);
    std::vector<GroupHom> maps;
    for (std::size_t k = 1; k + 1 <= m.source.n; ++k)
        maps.emplace_back(a.estar.group(k), b.estar.group(k), m.theta.map(k).table());
    maps.push_back(GroupHom::identity(a.top.group));
    return ComplexMorphism(a.estar, b.estar, std::move(maps));
}

// --------------------------------------------------------------------------
// Morphisms induced by homotopies of derived morphisms

struct InducedMorphism {
    ButterflyMorphism morphism;
    Report checks; ///< "coset identity [a,(b,c)]" per class, plus "theta" and "homotopy"
};

/**
 * For φ witnessing f ≃ g (φ.derived = f, φ.base = g), the morphism B^f -> B^g
 * with Θ_{n-1}[a,(b,c)] = [a,(b, φ_{n-1}(a) c)], identity below, and the
 * homotopy φ_k (k <= n-2) on E. The identity
 *   π_2ρ^g(Θ[a,(b,c)]) · φ_{n-2}(ξ^f[a,(b,c)]) = f_{n-1}(a) δ_n(c)
 * is evaluated at every class representative. Throws IllDefinedOnCosets if
 * Θ is not constant on classes; never throws for a failed identity.
 */
inline InducedMorphism induce_butterfly_morphism(const ComplexMorphism& p, const PointedHomotopy& h,
                                                 const Caps& caps = {})
{
    const auto& f = h.derived;
    const auto& g = h.base;
    if (!validate_homotopy(f, g, h.phi))
        throw Error(Errc::NotAHomotopy, "phi does not witness f = g");
    auto dpf = diagonal_pushout(p, f, caps);
    auto dpg = diagonal_pushout(p, g, caps);
    auto bf = butterfly_from_diagonal(dpf);
    auto bg = butterfly_from_diagonal(dpg);
    const std::size_t n = dpf.pushout.n;
    const auto& fcf = dpf.pushout.coproduct;
    const auto& fcg = dpg.pushout.coproduct;
    const auto& top = dpf.product.factors[n - 1];
    const auto& G = f.target();
    const auto gn = G.group(n);
    const auto gm = G.group(n - 1);
    auto phi_at = [&](std::size_t k, Elem x) {
        return k >= 1 && k <= h.phi.size() ? h.phi[k - 1][x] : G.group(k + 1).identity();
    };

    auto tm = fcf.descend(
        bg.E.group(n - 1),
        [&](Elem a, Elem bc) {
            return fcg.cls(a, top.pair(top.first(bc), gn.mul(phi_at(n - 1, a), top.second(bc))));
        },
        Errc::IllDefinedOnCosets);
    std::vector<GroupHom> maps;
    for (std::size_t k = 1; k + 2 <= n; ++k)
        maps.push_back(GroupHom::identity(bf.E.group(k)));
    maps.push_back(tm);
    ComplexMorphism theta(bf.E, bg.E, std::move(maps));

    InducedMorphism out{{bf, bg, theta, {}}, {}};
    auto& r = out.checks;
    r.merge(validate_morphism(theta), "theta: ");

    const auto& P = bf.E.group(n - 1);
    const auto rho_g = bg.f.map(n - 1);
    const auto fm = f.map(n - 1);
    const auto dn = G.boundary(n);
    for (Elem c = 0; c < P.order(); ++c) {
        const Elem pr = fcf.rep(c);
        const Elem a = fcf.first(pr);
        const Elem y = top.second(fcf.second(pr));
        const Elem xi = n >= 3 ? bf.E.boundary(n - 1)(c) : 0;
        const Elem lhs = gm.mul(rho_g(tm(c)), n >= 3 ? phi_at(n - 2, xi) : gm.identity());
        const Elem rhs = gm.mul(fm(a), dn(y));
        r.expect(lhs == rhs, "coset identity " + P.label(c),
                 "lhs " + gm.label(lhs) + " rhs " + gm.label(rhs));
    }

    const auto tg = truncate(G, n - 1);
    MapFamily fam = trivial_family(bf.E, tg);
    for (std::size_t k = 1; k + 2 <= n; ++k)
        fam[k - 1] = h.phi[k - 1];
    auto base = compose(bg.f, theta);
    out.morphism.phi = {base, fam, bf.f};
    r.expect(validate_homotopy(bf.f, base, fam), "homotopy", "restricted family does not witness f = f'*theta");
    return out;
}

/// As above, throwing IdentityViolated when any check fails.
inline ButterflyMorphism induced_butterfly_morphism(const ComplexMorphism& p, const PointedHomotopy& h,
                                                    const Caps& caps = {})
{
    auto im = induce_butterfly_morphism(p, h, caps);
    if (!im.checks.ok())
        throw Error(Errc::IdentityViolated, im.checks.failures().front().check + ": "
                                                + im.checks.failures().front().witness);
    return std::move(im.morphism);
}

// --------------------------------------------------------------------------
// Connected components

/**
 * A morphism B -> B' if one exists: Θ_{n-1} ranges over isomorphisms meeting
 * the wing conditions and equivariance (generator search), and for each the
 * homotopy f ≃ f'∘Θ is searched. Each search draws on `budget`; exhaustion
 * throws SearchCapExceeded.
 */
inline std::optional<ButterflyMorphism> find_butterfly_morphism(const NButterfly& b, const NButterfly& c,
                                                                std::size_t& budget)
{
    if (b.n != c.n || !(b.H == c.H) || !(b.G == c.G))
        throw Error(Errc::PreconditionFailed, "butterflies are not between the same complexes");
    const std::size_t n = b.n;
    if (n >= 3 && !(truncate(b.E, n - 2) == truncate(c.E, n - 2)))
        return std::nullopt;
    const auto em = b.E.group(n - 1);
    const auto cm = c.E.group(n - 1);
    if (em.order() != cm.order())
        return std::nullopt;
    const auto bp = b.p.map(n - 1);
    const auto cp = c.p.map(n - 1);
    std::optional<GroupHom> be, ce;
    if (n >= 3) {
        be = b.E.boundary(n - 1);
        ce = c.E.boundary(n - 1);
    }
    std::optional<ButterflyMorphism> found;
    for_each_hom(
        em, cm, generator_tree(em),
        [&](Elem gen, Elem y) { return cp(y) == bp(gen) && (!be || (*ce)(y) == (*be)(gen)); },
        [&](GroupHom t) {
            if (!t.is_bijective() || detail::differ(compose(t, b.alpha), c.alpha)
                || detail::differ(compose(t, b.beta), c.beta) || detail::differ(compose(cp, t), bp))
                return true;
            std::vector<GroupHom> maps;
            for (std::size_t k = 1; k + 2 <= n; ++k)
                maps.push_back(GroupHom::identity(b.E.group(k)));
            maps.push_back(t);
            ComplexMorphism theta(b.E, c.E, std::move(maps));
            if (!validate_morphism(theta).ok())
                return true;
            if (budget == 0)
                throw Error(Errc::SearchCapExceeded, "butterfly morphism search budget exhausted");
            auto h = search_homotopy(b.f, compose(c.f, theta), budget);
            if (!h)
                return true;
            found = ButterflyMorphism{b, c, theta, *h};
            return false;
        },
        budget);
    return found;
}

struct Pi0Result {
    std::vector<std::size_t> component; ///< component[i]: least index in i's class
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::pair<std::size_t, std::size_t>> indeterminate; ///< pairs left unresolved across classes
    bool exact() const noexcept { return indeterminate.empty(); }
};

/**
 * Classes of a finite butterfly list under existence of a morphism. Each
 * unresolved pair gets a fresh caps.search budget; pairs that exhaust it are
 * reported as indeterminate, making the partition a lower bound on merging.
 */
inline Pi0Result pi0(const std::vector<NButterfly>& bs, const Caps& caps = {})
{
    const std::size_t m = bs.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::pair<std::size_t, std::size_t>> open;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (find(i) == find(j))
                continue;
            std::size_t budget = caps.search;
            try {
                if (find_butterfly_morphism(bs[i], bs[j], budget)) {
                    auto a = find(i), b = find(j);
                    parent[std::max(a, b)] = std::min(a, b);
                }
            }
            catch (const Error& e) {
                if (e.code() != Errc::SearchCapExceeded)
                    throw;
                open.emplace_back(i, j);
            }
        }
    Pi0Result out;
    out.component.resize(m);
    std::vector<std::size_t> slot(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        auto r = find(i);
        out.component[i] = r;
        if (slot[r] == m) {
            slot[r] = out.classes.size();
            out.classes.emplace_back();
        }
        out.classes[slot[r]].push_back(i);
    }
    for (auto [i, j] : open)
        if (find(i) != find(j))
            out.indeterminate.emplace_back(i, j);
    return out;
}

} // namespace xcb

#endif
