/**
 * Fibered coproducts K ×^H G = (K × G)/N, N = {(d(h)^-1, p(h))}, the
 * n-pushout below a morphism, and the diagonal pushout used to build
 * butterflies from derived morphisms.
 *
 * K × G is never tabulated: pairs are indexed k * |G| + g, multiplied on the
 * fly, and each coset is represented by its least pair index.
 */
#ifndef XCB_PUSHOUT_HPP
#define XCB_PUSHOUT_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xcb/xcomplex.hpp"

namespace xcb {

enum class CoproductMode {
    Normal,  ///< N must be normal
    Central, ///< N must moreover be central
};

class FiberedCoproduct {
public:
    /**
     * d: H -> K and p: H -> G. With `action` (K acting on G) the ambient
     * group is the semidirect product, (k,g)(k',g') = (kk', g^{k'} g');
     * otherwise the direct product. Throws NNotNormal if N is not a normal
     * subgroup (or not central in Central mode), OrderCapExceeded if |K||G|
     * exceeds caps.product.
     */
    FiberedCoproduct(GroupHom d, GroupHom p, CoproductMode mode = CoproductMode::Normal,
                     std::optional<RightAction> action = std::nullopt, const Caps& caps = {})
        : d_(std::move(d)), p_(std::move(p)), action_(std::move(action))
    {
        if (!(d_.source() == p_.source()))
            throw Error(Errc::TargetMismatch, "fibered coproduct of maps with different sources");
        K_ = d_.target();
        G_ = p_.target();
        if (action_ && (!(action_->actor() == K_) || !(action_->module() == G_)))
            throw Error(Errc::TargetMismatch, "semidirect action has the wrong actor or module");
        const std::size_t total = K_.order() * G_.order();
        if (total > caps.product)
            throw Error(Errc::OrderCapExceeded, "pair group of order " + std::to_string(total) + " exceeds cap "
                                                    + std::to_string(caps.product));
        const auto& H = d_.source();
        std::vector<bool> inN(total, false);
        for (Elem h = 0; h < H.order(); ++h) {
            Elem x = pair(K_.inv(d_(h)), p_(h));
            if (!inN[x]) {
                inN[x] = true;
                n_.push_back(x);
            }
        }
        std::sort(n_.begin(), n_.end());
        if (!inN[identity()])
            throw Error(Errc::NNotNormal, "N misses the identity pair");
        for (auto a : n_) {
            if (!inN[inv(a)])
                throw Error(Errc::NNotNormal, "N is not closed under inverses at " + pair_label(a));
            for (auto b : n_)
                if (!inN[mul(a, b)])
                    throw Error(Errc::NNotNormal, "N is not closed under products at " + pair_label(a) + ", "
                                                      + pair_label(b));
        }
        std::vector<Elem> gens;
        for (auto k : generator_tree(K_).gens)
            gens.push_back(pair(k, G_.identity()));
        for (auto g : generator_tree(G_).gens)
            gens.push_back(pair(K_.identity(), g));
        for (auto s : gens)
            for (auto a : n_) {
                Elem c = mul(mul(inv(s), a), s);
                if (mode == CoproductMode::Central && c != a)
                    throw Error(Errc::NNotNormal, "N is not central: " + pair_label(a) + " moved by "
                                                      + pair_label(s));
                if (!inN[c])
                    throw Error(Errc::NNotNormal, "conjugate of " + pair_label(a) + " by " + pair_label(s)
                                                      + " leaves N");
            }
        const Elem none = static_cast<Elem>(-1);
        cls_.assign(total, none);
        for (Elem x = 0; x < total; ++x) {
            if (cls_[x] != none)
                continue;
            const auto c = static_cast<Elem>(reps_.size());
            reps_.push_back(x);
            for (auto a : n_)
                cls_[mul(x, a)] = c;
        }
        const std::size_t m = reps_.size();
        std::vector<Elem> tab(m * m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                tab[i * m + j] = cls_[mul(reps_[i], reps_[j])];
        std::vector<std::string> labels;
        for (auto r : reps_)
            labels.push_back("[" + K_.label(first(r)) + "," + G_.label(second(r)) + "]");
        group_ = FinGroup::trusted(m, cls_[identity()], std::move(tab), std::move(labels));
        std::vector<Elem> l1(K_.order()), l2(G_.order());
        for (Elem k = 0; k < K_.order(); ++k)
            l1[k] = cls(k, G_.identity());
        for (Elem g = 0; g < G_.order(); ++g)
            l2[g] = cls(K_.identity(), g);
        leg1_ = GroupHom(K_, group_, std::move(l1));
        leg2_ = GroupHom(G_, group_, std::move(l2));
    }

    const FinGroup& group() const noexcept { return group_; }
    const FinGroup& left() const noexcept { return K_; }
    const FinGroup& right() const noexcept { return G_; }
    const GroupHom& d() const noexcept { return d_; }
    const GroupHom& p() const noexcept { return p_; }
    /// q_N ∘ i_1: K -> Q
    const GroupHom& leg1() const noexcept { return leg1_; }
    /// q_N ∘ i_2: G -> Q
    const GroupHom& leg2() const noexcept { return leg2_; }
    /// Pair indices of N, ascending.
    const std::vector<Elem>& kernel_pairs() const noexcept { return n_; }
    bool semidirect() const noexcept { return action_.has_value(); }

    Elem pair(Elem k, Elem g) const { return static_cast<Elem>(k * G_.order() + g); }
    Elem first(Elem x) const { return static_cast<Elem>(x / G_.order()); }
    Elem second(Elem x) const { return static_cast<Elem>(x % G_.order()); }
    Elem identity() const { return pair(K_.identity(), G_.identity()); }

    Elem mul(Elem a, Elem b) const
    {
        Elem ga = second(a);
        if (action_)
            ga = (*action_)(ga, first(b));
        return pair(K_.mul(first(a), first(b)), G_.mul(ga, second(b)));
    }

    Elem inv(Elem a) const
    {
        Elem ki = K_.inv(first(a));
        Elem gi = G_.inv(second(a));
        if (action_)
            gi = (*action_)(gi, ki);
        return pair(ki, gi);
    }

    /// Class [k, g].
    Elem cls(Elem k, Elem g) const { return cls_[pair(k, g)]; }
    Elem cls_of_pair(Elem x) const { return cls_[x]; }
    /// Least pair of a class.
    Elem rep(Elem c) const { return reps_[c]; }

    std::string pair_label(Elem x) const { return "(" + K_.label(first(x)) + "," + G_.label(second(x)) + ")"; }

    /**
     * A group map out of the quotient given on pairs; `fn` must be constant
     * on classes, which is checked on every pair (error `code` otherwise).
     */
    GroupHom descend(const FinGroup& target, const std::function<Elem(Elem, Elem)>& fn, Errc code) const
    {
        std::vector<Elem> tab(group_.order());
        for (Elem c = 0; c < tab.size(); ++c)
            tab[c] = fn(first(reps_[c]), second(reps_[c]));
        for (Elem x = 0; x < cls_.size(); ++x)
            if (fn(first(x), second(x)) != tab[cls_[x]])
                throw Error(code, "map is not constant on the class of " + pair_label(x));
        return GroupHom(group_, target, std::move(tab));
    }

private:
    GroupHom d_, p_;
    std::optional<RightAction> action_;
    FinGroup K_, G_, group_;
    std::vector<Elem> n_, cls_, reps_;
    GroupHom leg1_, leg2_;
};

inline FiberedCoproduct fibered_coproduct(const GroupHom& d, const GroupHom& p,
                                          CoproductMode mode = CoproductMode::Normal, const Caps& caps = {})
{
    return FiberedCoproduct(d, p, mode, std::nullopt, caps);
}

/**
 * ker d -> ker(q∘i_2) (via p) is surjective and coker d -> coker(q∘i_2)
 * (via q∘i_1) is an isomorphism, both checked elementwise.
 */
inline Report check_coproduct_kernel_cokernel(const FiberedCoproduct& fc)
{
    Report r;
    const auto& d = fc.d();
    const auto& p = fc.p();
    const auto kd = d.kernel_elements();
    const auto kq = fc.leg2().kernel_elements();
    std::vector<bool> hit(fc.right().order(), false);
    for (auto h : kd)
        hit[p(h)] = true;
    std::optional<Elem> miss;
    for (auto g : kq)
        if (!hit[g] && !miss)
            miss = g;
    r.expect(!miss, "coproduct kernel surjection", miss ? "g=" + fc.right().label(*miss) : "");

    auto ck = cokernel(d);
    auto cq = cokernel(fc.leg2());
    std::vector<Elem> tab(ck.group.order());
    bool well = true;
    for (Elem c = 0; c < tab.size(); ++c)
        tab[c] = cq.projection(fc.leg1()(ck.representatives[c]));
    for (Elem k = 0; k < fc.left().order(); ++k)
        well = well && tab[ck.projection(k)] == cq.projection(fc.leg1()(k));
    GroupHom c(ck.group, cq.group, tab);
    r.expect(well && c.is_bijective() && c.is_homomorphism(), "coproduct cokernel isomorphism",
             well ? "induced map has orders " + std::to_string(ck.group.order()) + " -> "
                        + std::to_string(cq.group.order())
                  : "induced map is not well defined");
    return r;
}

/// ∂_3(C_3) lies in the centre of C_2.
inline Report check_commutative_image(const ReducedCrossedComplex& c)
{
    Report r;
    if (c.length() < 3) {
        r.pass("commutative image");
        return r;
    }
    const auto c2 = c.group(2);
    const auto z = center(c2);
    std::optional<Elem> bad;
    for (auto x : c.boundary(3).image_elements())
        if (!std::binary_search(z.begin(), z.end(), x) && !bad)
            bad = x;
    r.expect(!bad, "commutative image", bad ? "boundary " + c2.label(*bad) + " is not central" : "");
    return r;
}

// --------------------------------------------------------------------------
// n-pushout

/**
 * For f: H -> G between length-n complexes (n >= 2):
 *
 *   H^f = [G_n -> H_{n-1} ×^{H_n} G_n -> H_{n-2} -> ... -> H_1]
 *
 * with H_1 acting on [x,g] by [x^a, g^{f_1 a}] and on G_n through f_1. For
 * n = 2 the middle group is the semidirect product H_1 ⋉ G_2 (H_1 acting
 * through f_1) modulo N; it becomes degree 1 and acts on G_2 through ρ_1.
 */
struct NPushout {
    ComplexMorphism f;
    std::size_t n = 0;
    FiberedCoproduct coproduct;
    ReducedCrossedComplex complex;
    ComplexMorphism iota, rho;
};

inline NPushout n_pushout_below(const ComplexMorphism& f, const Caps& caps = {})
{
    const std::size_t n = f.length();
    if (n < 2)
        throw Error(Errc::DegreeOutOfRange, "n-pushout needs length at least 2");
    const auto& H = f.source();
    const auto& G = f.target();
    const auto h1 = H.group(1);
    const auto gn = G.group(n);
    const auto fn = f.map(n);
    const auto f1 = f.map(1);

    std::optional<RightAction> semi;
    if (n == 2)
        semi = RightAction::through(G.action(2), f1);
    FiberedCoproduct fc(H.boundary(n), fn, n == 3 ? CoproductMode::Central : CoproductMode::Normal, semi, caps);
    const auto& P = fc.group();

    std::vector<FinGroup> groups;
    for (std::size_t k = 1; k + 2 <= n; ++k)
        groups.push_back(H.group(k));
    groups.push_back(P);
    groups.push_back(gn);

    const auto& c1 = groups[0];
    std::vector<GroupHom> bnd;
    std::vector<RightAction> act;
    for (std::size_t k = 2; k + 2 <= n; ++k) {
        bnd.push_back(H.boundary(k));
        act.push_back(H.action(k));
    }

    // ρ_{n-1}[x, g] = f_{n-1}(x) δ_n(g)
    const auto fm = f.map(n - 1);
    const auto dn = G.boundary(n);
    const auto gm = G.group(n - 1);
    auto rho_top = fc.descend(
        gm, [&](Elem x, Elem g) { return gm.mul(fm(x), dn(g)); }, Errc::InducedMapIllDefined);

    if (n >= 3) {
        const auto hm2 = H.group(n - 2);
        const auto dm = H.boundary(n - 1);
        bnd.push_back(fc.descend(
            hm2, [&](Elem x, Elem) { return dm(x); }, Errc::QuotientIllDefined));
        std::vector<Elem> t(P.order() * c1.order());
        for (Elem a = 0; a < c1.order(); ++a) {
            auto ta = fc.descend(
                P, [&](Elem x, Elem g) { return fc.cls(H.act(n - 1, x, a), G.act(n, g, f1(a))); },
                Errc::QuotientIllDefined);
            for (Elem c = 0; c < P.order(); ++c)
                t[c * c1.order() + a] = ta(c);
        }
        act.emplace_back(c1, P, std::move(t));
    }
    bnd.push_back(fc.leg2());
    {
        std::vector<Elem> t(gn.order() * c1.order());
        for (Elem g = 0; g < gn.order(); ++g)
            for (Elem a = 0; a < c1.order(); ++a)
                t[g * c1.order() + a] = G.act(n, g, n == 2 ? rho_top(a) : f1(a));
        act.emplace_back(c1, gn, std::move(t));
    }
    ReducedCrossedComplex hf(std::move(groups), std::move(bnd), std::move(act));

    std::vector<GroupHom> im, rm;
    for (std::size_t k = 1; k + 2 <= n; ++k) {
        im.push_back(GroupHom::identity(H.group(k)));
        rm.push_back(f.map(k));
    }
    im.push_back(fc.leg1());
    im.push_back(fn);
    rm.push_back(rho_top);
    rm.push_back(GroupHom::identity(gn));
    ComplexMorphism iota(H, hf, std::move(im));
    ComplexMorphism rho(hf, G, std::move(rm));
    return {f, n, std::move(fc), std::move(hf), std::move(iota), std::move(rho)};
}

/// Validity of H^f, ι and ρ, and ρ∘ι = f.
inline Report check_pushout_factorization(const NPushout& np)
{
    Report r;
    r.merge(validate_complex(np.complex), "pushout complex: ");
    r.merge(validate_morphism(np.iota), "iota: ");
    r.merge(validate_morphism(np.rho), "rho: ");
    auto comp = compose(np.rho, np.iota);
    std::optional<std::size_t> bad;
    for (std::size_t k = 1; k <= np.n && !bad; ++k)
        if (comp.map(k).table() != np.f.map(k).table())
            bad = k;
    r.expect(!bad, "factorization rho*iota=f", bad ? "degree " + std::to_string(*bad) : "");
    return r;
}

/**
 * π_k(ι) is an isomorphism for k < n and onto for k = n; cotr_{n-1}(ι) is an
 * isomorphism in degree n-1 and the identity below.
 */
inline Report compare_pushout_homotopy_groups(const NPushout& np)
{
    Report r;
    const std::size_t n = np.n;
    for (std::size_t k = 1; k <= n; ++k) {
        auto m = induced_map(np.iota, k);
        const auto K = std::to_string(k);
        if (k < n)
            r.expect(m.is_bijective() && m.is_homomorphism(), "homotopy iso " + K,
                     "orders " + std::to_string(m.source().order()) + " -> " + std::to_string(m.target().order()));
        else
            r.expect(m.is_surjective(), "homotopy surjection " + K,
                     "image misses part of order " + std::to_string(m.target().order()));
    }

    const auto& H = np.f.source();
    const auto& Hf = np.complex;
    auto qa = quotient(H.group(n - 1), H.boundary(n).image_elements());
    auto qb = quotient(Hf.group(n - 1), Hf.boundary(n).image_elements());
    const auto in = np.iota.map(n - 1);
    std::vector<Elem> tab(qa.group.order());
    bool well = true;
    for (Elem c = 0; c < tab.size(); ++c)
        tab[c] = qb.projection(in(qa.representatives[c]));
    for (Elem x = 0; x < H.group(n - 1).order(); ++x)
        well = well && tab[qa.projection(x)] == qb.projection(in(x));
    GroupHom c(qa.group, qb.group, tab);
    r.expect(well && c.is_bijective() && c.is_homomorphism(), "cotruncation iso " + std::to_string(n - 1),
             "induced map on cokernels is not an isomorphism");
    std::optional<std::size_t> bad;
    for (std::size_t k = 1; k + 2 <= n && !bad; ++k)
        if (!(Hf.group(k) == H.group(k)) || !(np.iota.map(k) == GroupHom::identity(H.group(k))))
            bad = k;
    r.expect(!bad, "cotruncation identity below", bad ? "degree " + std::to_string(*bad) : "");
    return r;
}

// --------------------------------------------------------------------------
// Exactness of the comparison sequences

/**
 * For p: E -> H (E of length >= n-1) and β: G_n -> E_{n-1}:
 *
 *   1 -> G_n -β-> E_{n-1} -u_{n-1}-> ker η_{n-2} ×_{ker ∂_{n-2}} H_{n-1} -> 1
 *   E_k -u_k-> ker η_{k-1} ×_{ker ∂_{k-1}} H_k -> 1            k <= n-2
 *
 * (u_1 = p_1, and the degree-2 target is E_1 ×_{H_1} H_2). Check names
 * start with `id`.
 */
inline Report exactness_report(const ComplexMorphism& p, const GroupHom& beta, std::size_t n, const std::string& id,
                               const Caps& caps = {})
{
    Report r;
    const auto& E = p.source();
    const auto em = E.group(n - 1);
    r.expect(beta.is_injective(), id + " injective", "beta has kernel of order " + std::to_string(beta.kernel_elements().size()));

    GroupHom u = n - 1 == 1 ? p.map(1) : comparison_map(p, n - 1, caps).u;
    auto ker = u.kernel_elements();
    auto img = beta.image_elements();
    std::optional<Elem> extra;
    for (auto x : ker)
        if (!std::binary_search(img.begin(), img.end(), x) && !extra)
            extra = x;
    for (auto x : img)
        if (!std::binary_search(ker.begin(), ker.end(), x) && !extra)
            extra = x;
    r.expect(!extra, id + " exact", extra ? "ker u and im beta differ at " + em.label(*extra) : "");
    r.expect(u.is_surjective(), id + " surjective " + std::to_string(n - 1),
             "u misses part of a pullback of order " + std::to_string(u.target().order()));
    for (std::size_t k = 1; k + 2 <= n; ++k) {
        GroupHom uk = k == 1 ? p.map(1) : comparison_map(p, k, caps).u;
        r.expect(uk.is_surjective(), id + " surjective " + std::to_string(k),
                 "u misses part of a pullback of order " + std::to_string(uk.target().order()));
    }
    return r;
}

// --------------------------------------------------------------------------
// Diagonal pushout

/// Q^∇ for ∇ = (p, f): Q -> H × G, with the product data kept for reuse.
struct DiagonalPushout {
    ComplexMorphism p, f;
    ProductComplex product;
    ComplexMorphism nabla;
    NPushout pushout;
    ComplexMorphism proj1_rho; ///< π_1 ∘ ρ: Q^∇ -> H
    ComplexMorphism proj2_rho; ///< π_2 ∘ ρ: Q^∇ -> G
    GroupHom alpha;            ///< x |-> [1,(x,1)]
    GroupHom beta;             ///< y |-> [1,(1,y)]
};

/// PreconditionFailed unless p is a trivial fibration of n-complexes.
inline DiagonalPushout diagonal_pushout(const ComplexMorphism& p, const ComplexMorphism& f, const Caps& caps = {})
{
    if (!(p.source() == f.source()))
        throw Error(Errc::TargetMismatch, "p and f must share their source");
    if (!is_trivial_fibration(p, true, caps))
        throw Error(Errc::PreconditionFailed, "p is not a trivial fibration");
    const std::size_t n = std::max(p.length(), f.length());
    if (n < 2)
        throw Error(Errc::DegreeOutOfRange, "diagonal pushout needs length at least 2");
    auto prod = product_complex(p.target(), f.target(), caps);
    auto nabla = prod.pairing(p, f);
    auto np = n_pushout_below(nabla, caps);
    auto pr1 = compose(prod.proj1, np.rho);
    auto pr2 = compose(prod.proj2, np.rho);
    const auto& top = prod.factors[n - 1];
    const auto& P = np.complex.group(n - 1);
    std::vector<Elem> a(p.target().group(n).order()), b(f.target().group(n).order());
    for (Elem x = 0; x < a.size(); ++x)
        a[x] = np.complex.boundary(n)(top.pair(x, f.target().group(n).identity()));
    for (Elem y = 0; y < b.size(); ++y)
        b[y] = np.complex.boundary(n)(top.pair(p.target().group(n).identity(), y));
    GroupHom alpha(p.target().group(n), P, std::move(a));
    GroupHom beta(f.target().group(n), P, std::move(b));
    return {p, f, std::move(prod), std::move(nabla), std::move(np), std::move(pr1), std::move(pr2),
            std::move(alpha), std::move(beta)};
}

/**
 * ι: Q -> Q^∇ is a weak equivalence, π_1∘ρ is a trivial fibration, and the
 * comparison sequences are exact.
 */
inline Report check_diagonal_pushout(const DiagonalPushout& dp, const Caps& caps = {})
{
    Report r;
    r.merge(check_pushout_factorization(dp.pushout));
    r.expect(is_weak_equivalence(dp.pushout.iota), "weak equivalence iota", "some π_k(ι) is not bijective");
    r.expect(is_trivial_fibration(dp.proj1_rho, true, caps), "trivial fibration pi1*rho",
             "comparison maps fail surjectivity or top bijectivity");
    r.merge(exactness_report(dp.proj1_rho, dp.beta, dp.pushout.n, "exact", caps));
    return r;
}

} // namespace xcb

#endif
