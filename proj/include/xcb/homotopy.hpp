/**
 * Pointed 1-fold left homotopies between morphisms of reduced complexes.
 *
 * A family φ_k: C_k -> D_{k+1} (1 <= k <= length C) and a base morphism g
 * determine f by
 *
 *   f_1(c) = g_1(c) δ_2(φ_1 c)
 *   f_k(c) = g_k(c) δ_{k+1}(φ_k c) φ_{k-1}(∂_k c)        k >= 2
 *
 * with δ_{k+1} trivial above the target's length. Two readings of "φ is a
 * homotopy" are offered:
 *
 *   Weak        φ is any pointed set map and the derived f is a morphism.
 *   Structured  additionally φ_1 is a g_1-derivation,
 *               φ_1(ab) = φ_1(a)^{g_1 b} φ_1(b), and each φ_k, k >= 2, is a
 *               homomorphism with φ_k(a^x) = φ_k(a)^{g_1 x}.
 */
#ifndef XCB_HOMOTOPY_HPP
#define XCB_HOMOTOPY_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xcb/xcomplex.hpp"

namespace xcb {

enum class HomotopyKind { Weak, Structured };

/// phi[k-1] is the table of φ_k: C_k -> D_{k+1}.
using MapFamily = std::vector<std::vector<Elem>>;

inline MapFamily trivial_family(const ReducedCrossedComplex& c, const ReducedCrossedComplex& d)
{
    MapFamily phi;
    for (std::size_t k = 1; k <= c.length(); ++k)
        phi.emplace_back(c.group(k).order(), d.group(k + 1).identity());
    return phi;
}

inline void check_family_shape(const ReducedCrossedComplex& c, const ReducedCrossedComplex& d, const MapFamily& phi)
{
    if (phi.size() != c.length())
        throw Error(Errc::DegreeMismatch, "family has " + std::to_string(phi.size()) + " maps for a length "
                                              + std::to_string(c.length()) + " source");
    for (std::size_t k = 1; k <= c.length(); ++k) {
        if (phi[k - 1].size() != c.group(k).order())
            throw Error(Errc::DegreeMismatch, "phi_" + std::to_string(k) + " has wrong size");
        for (auto v : phi[k - 1])
            if (v >= d.group(k + 1).order())
                throw Error(Errc::DegreeMismatch, "phi_" + std::to_string(k) + " value out of range");
    }
}

/// f from g and φ by the determination formulas; f is not validated.
inline ComplexMorphism derive_target(const ComplexMorphism& g, const MapFamily& phi)
{
    const auto& C = g.source();
    const auto& D = g.target();
    check_family_shape(C, D, phi);
    std::vector<GroupHom> maps;
    for (std::size_t k = 1; k <= g.length(); ++k) {
        const auto ck = C.group(k);
        const auto dk = D.group(k);
        std::vector<Elem> tab(ck.order());
        const auto up = D.boundary(k + 1);
        for (Elem c = 0; c < ck.order(); ++c) {
            Elem v = g(k, c);
            if (k <= phi.size())
                v = dk.mul(v, up(phi[k - 1][c]));
            if (k >= 2 && k - 1 <= phi.size())
                v = dk.mul(v, phi[k - 2][C.boundary(k)(c)]);
            tab[c] = v;
        }
        maps.emplace_back(ck, dk, std::move(tab));
    }
    return ComplexMorphism(C, D, std::move(maps));
}

/**
 * Free version with base element φ_0 in D_1:
 *   f_1(c) = φ_0 g_1(c) δ_2(φ_1 c) φ_0^-1
 *   f_k(c) = (g_k(c) δ_{k+1}(φ_k c) φ_{k-1}(∂_k c))^{φ_0^-1}
 */
inline ComplexMorphism derive_target_free(const ComplexMorphism& g, Elem phi0, const MapFamily& phi)
{
    auto f = derive_target(g, phi);
    const auto& D = g.target();
    const auto d1 = D.group(1);
    if (phi0 >= d1.order())
        throw Error(Errc::DegreeMismatch, "base element out of range");
    const Elem back = d1.inv(phi0);
    std::vector<GroupHom> maps;
    for (std::size_t k = 1; k <= f.length(); ++k) {
        auto t = f.map(k).table();
        for (auto& v : t)
            v = D.act(k, v, back);
        maps.emplace_back(f.source().group(k), D.group(k), std::move(t));
    }
    return ComplexMorphism(f.source(), D, std::move(maps));
}

/// Structure conditions of the Structured reading, as a report.
inline Report check_structure(const ComplexMorphism& g, const MapFamily& phi)
{
    Report r;
    const auto& C = g.source();
    const auto& D = g.target();
    const auto c1 = C.group(1);
    for (std::size_t k = 1; k <= C.length(); ++k) {
        const auto ck = C.group(k);
        const auto up = D.group(k + 1);
        const auto K = std::to_string(k);
        const auto& p = phi[k - 1];
        std::optional<std::pair<Elem, Elem>> bad;
        for (Elem a = 0; a < ck.order() && !bad; ++a)
            for (Elem b = 0; b < ck.order() && !bad; ++b) {
                Elem want = k == 1 ? up.mul(D.act(2, p[a], g(1, b)), p[b]) : up.mul(p[a], p[b]);
                if (p[ck.mul(a, b)] != want)
                    bad = std::pair{a, b};
            }
        r.expect(!bad, k == 1 ? "derivation 1" : "hom " + K,
                 bad ? "a=" + ck.label(bad->first) + " b=" + ck.label(bad->second) : "");
        if (k >= 2) {
            std::optional<std::pair<Elem, Elem>> eq;
            for (Elem a = 0; a < ck.order() && !eq; ++a)
                for (Elem x = 0; x < c1.order() && !eq; ++x)
                    if (p[C.act(k, a, x)] != D.act(k + 1, p[a], g(1, x)))
                        eq = std::pair{a, x};
            r.expect(!eq, "equivariance " + K, eq ? "a=" + ck.label(eq->first) + " x=" + c1.label(eq->second) : "");
        }
    }
    return r;
}

inline bool is_pointed(const ReducedCrossedComplex& c, const ReducedCrossedComplex& d, const MapFamily& phi)
{
    for (std::size_t k = 1; k <= phi.size(); ++k)
        if (phi[k - 1][c.group(k).identity()] != d.group(k + 1).identity())
            return false;
    return true;
}

/// True iff φ is pointed, derive_target(g, φ) = f and f is a valid morphism
/// (plus the structure conditions for the Structured reading).
inline bool validate_homotopy(const ComplexMorphism& f, const ComplexMorphism& g, const MapFamily& phi,
                              HomotopyKind kind = HomotopyKind::Weak)
{
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        return false;
    try {
        check_family_shape(g.source(), g.target(), phi);
    }
    catch (const Error&) {
        return false;
    }
    if (!is_pointed(g.source(), g.target(), phi))
        return false;
    if (!(derive_target(g, phi) == f) || !validate_morphism(f).ok())
        return false;
    return kind == HomotopyKind::Weak || check_structure(g, phi).ok();
}

/// φ witnessing derived ≃ base.
struct PointedHomotopy {
    ComplexMorphism base;
    MapFamily phi;
    ComplexMorphism derived;
};

/// Derives f from (g, φ); NotAHomotopy if φ is not pointed or f is not a morphism.
inline PointedHomotopy make_homotopy(const ComplexMorphism& g, MapFamily phi, HomotopyKind kind = HomotopyKind::Weak)
{
    auto f = derive_target(g, phi);
    if (!is_pointed(g.source(), g.target(), phi))
        throw Error(Errc::NotAHomotopy, "family is not pointed");
    auto r = validate_morphism(f);
    if (!r.ok())
        throw Error(Errc::NotAHomotopy, "derived map fails " + r.failures().front().check + " at "
                                            + r.failures().front().witness);
    if (kind == HomotopyKind::Structured) {
        auto s = check_structure(g, phi);
        if (!s.ok())
            throw Error(Errc::NotAHomotopy, s.failures().front().check + " at " + s.failures().front().witness);
    }
    return {g, std::move(phi), std::move(f)};
}

inline PointedHomotopy identity_homotopy(const ComplexMorphism& g)
{
    return {g, trivial_family(g.source(), g.target()), g};
}

/// φ² * φ¹ (pointwise φ²(x) φ¹(x)) for φ¹: f ≃ g and φ²: g ≃ h, giving f ≃ h.
inline PointedHomotopy compose_homotopies(const PointedHomotopy& phi2, const PointedHomotopy& phi1)
{
    if (!(phi1.base == phi2.derived))
        throw Error(Errc::NotChainable, "base of the first homotopy differs from the derived map of the second");
    const auto& D = phi1.base.target();
    MapFamily phi(phi1.phi.size());
    for (std::size_t k = 1; k <= phi.size(); ++k) {
        const auto up = D.group(k + 1);
        phi[k - 1].resize(phi1.phi[k - 1].size());
        for (std::size_t c = 0; c < phi[k - 1].size(); ++c)
            phi[k - 1][c] = up.mul(phi2.phi[k - 1][c], phi1.phi[k - 1][c]);
    }
    auto out = PointedHomotopy{phi2.base, std::move(phi), phi1.derived};
    if (!(derive_target(out.base, out.phi) == out.derived))
        throw Error(Errc::NotAHomotopy, "composite family does not determine the composite");
    return out;
}

/// φ^-1 (pointwise inverses) witnessing base ≃ derived.
inline PointedHomotopy invert_homotopy(const PointedHomotopy& h)
{
    const auto& D = h.base.target();
    MapFamily phi(h.phi);
    for (std::size_t k = 1; k <= phi.size(); ++k)
        for (auto& v : phi[k - 1])
            v = D.group(k + 1).inv(v);
    auto out = PointedHomotopy{h.derived, std::move(phi), h.base};
    if (!(derive_target(out.base, out.phi) == out.derived))
        throw Error(Errc::NotAHomotopy, "inverse family does not determine the base");
    return out;
}

/// φ ∘ Θ witnessing f∘Θ ≃ g∘Θ.
inline PointedHomotopy precompose(const PointedHomotopy& h, const ComplexMorphism& theta)
{
    if (!(theta.target() == h.base.source()))
        throw Error(Errc::TargetMismatch, "precomposition with a morphism into another complex");
    MapFamily phi;
    for (std::size_t k = 1; k <= theta.source().length(); ++k) {
        std::vector<Elem> t(theta.source().group(k).order());
        for (Elem c = 0; c < t.size(); ++c)
            t[c] = k <= h.phi.size() ? h.phi[k - 1][theta(k, c)] : h.base.target().group(k + 1).identity();
        phi.push_back(std::move(t));
    }
    return {compose(h.base, theta), std::move(phi), compose(h.derived, theta)};
}

// --------------------------------------------------------------------------
// Search

namespace detail {

/// Elements of D_{k+1} over each element of D_k under δ_{k+1}, ascending.
inline std::vector<std::vector<Elem>> fibres(const ReducedCrossedComplex& d, std::size_t k)
{
    const auto up = d.group(k + 1);
    const auto delta = d.boundary(k + 1);
    std::vector<std::vector<Elem>> out(d.group(k).order());
    for (Elem y = 0; y < up.order(); ++y)
        out[delta(y)].push_back(y);
    return out;
}

/// Required δ_{k+1}(φ_k c) = g_k(c)^-1 f_k(c) φ_{k-1}(∂c)^-1.
inline Elem required(const ComplexMorphism& f, const ComplexMorphism& g, const MapFamily& phi, std::size_t k,
                     Elem c)
{
    const auto& C = f.source();
    const auto dk = f.target().group(k);
    Elem v = dk.mul(dk.inv(g(k, c)), f(k, c));
    if (k >= 2)
        v = dk.mul(v, dk.inv(phi[k - 2][C.boundary(k)(c)]));
    return v;
}

} // namespace detail

/**
 * Looks for φ with derive_target(g, φ) = f. Positions (degree, element) are
 * filled in lexicographic order with fibre values in ascending order, so the
 * first witness is the lexicographically least. Elements outside im ∂_{k+1}
 * never influence a later constraint and take their least admissible value.
 * Returns nothing when the space is exhausted; throws SearchCapExceeded when
 * more than `budget` nodes would be visited.
 */
inline std::optional<PointedHomotopy> search_homotopy(const ComplexMorphism& f, const ComplexMorphism& g,
                                                      std::size_t budget,
                                                      HomotopyKind kind = HomotopyKind::Weak)
{
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw Error(Errc::TargetMismatch, "homotopy search between morphisms with different ends");
    const auto& C = f.source();
    const auto& D = f.target();
    const std::size_t n = C.length();
    std::vector<std::vector<std::vector<Elem>>> fib;
    std::vector<std::vector<bool>> hit; // hit[k-1][c]: c in im ∂_{k+1}
    for (std::size_t k = 1; k <= n; ++k) {
        fib.push_back(detail::fibres(D, k));
        std::vector<bool> h(C.group(k).order(), false);
        for (auto x : C.boundary(k + 1).image_elements())
            h[x] = true;
        hit.push_back(std::move(h));
    }
    MapFamily phi = trivial_family(C, D);
    auto spend = [&] {
        if (budget == 0)
            throw Error(Errc::SearchCapExceeded, "homotopy search budget exhausted");
        --budget;
    };

    if (kind == HomotopyKind::Weak) {
        std::function<bool(std::size_t, Elem)> rec = [&](std::size_t k, Elem c) -> bool {
            if (k > n)
                return true;
            if (c == C.group(k).order())
                return rec(k + 1, 0);
            spend();
            const auto& cand = fib[k - 1][detail::required(f, g, phi, k, c)];
            if (cand.empty())
                return false;
            if (c == C.group(k).identity() || !hit[k - 1][c]) {
                if (c == C.group(k).identity()
                    && std::find(cand.begin(), cand.end(), D.group(k + 1).identity()) == cand.end())
                    return false;
                phi[k - 1][c] = c == C.group(k).identity() ? D.group(k + 1).identity() : cand.front();
                return rec(k, c + 1);
            }
            for (auto y : cand) {
                phi[k - 1][c] = y;
                if (rec(k, c + 1))
                    return true;
            }
            return false;
        };
        if (!rec(1, 0))
            return std::nullopt;
        return make_homotopy(g, std::move(phi));
    }

    // Structured: φ_k is fixed by its generator values (derivation rule in
    // degree 1, homomorphism above).
    const auto c1 = C.group(1);
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k > n)
            return true;
        const auto ck = C.group(k);
        const auto up = D.group(k + 1);
        auto tree = generator_tree(ck);
        const std::size_t m = tree.gens.size();
        std::vector<std::vector<Elem>> cands(m);
        for (std::size_t s = 0; s < m; ++s) {
            cands[s] = fib[k - 1][detail::required(f, g, phi, k, tree.gens[s])];
            if (cands[s].empty())
                return false;
        }
        std::vector<std::size_t> pick(m, 0);
        while (true) {
            spend();
            auto& t = phi[k - 1];
            t[ck.identity()] = up.identity();
            for (std::size_t i = 1; i < tree.bfs.size(); ++i) {
                Elem e = tree.bfs[i];
                Elem gen = tree.gens[tree.via[e]];
                Elem val = cands[tree.via[e]][pick[tree.via[e]]];
                Elem prev = t[tree.parent[e]];
                t[e] = k == 1 ? up.mul(D.act(2, prev, g(1, gen)), val) : up.mul(prev, val);
            }
            bool ok = true;
            for (Elem c = 0; c < ck.order() && ok; ++c)
                ok = D.boundary(k + 1)(t[c]) == detail::required(f, g, phi, k, c);
            for (Elem a = 0; a < ck.order() && ok; ++a)
                for (Elem b = 0; b < ck.order() && ok; ++b) {
                    Elem want = k == 1 ? up.mul(D.act(2, t[a], g(1, b)), t[b]) : up.mul(t[a], t[b]);
                    ok = t[ck.mul(a, b)] == want;
                }
            for (Elem a = 0; a < ck.order() && ok && k >= 2; ++a)
                for (Elem x = 0; x < c1.order() && ok; ++x)
                    ok = t[C.act(k, a, x)] == D.act(k + 1, t[a], g(1, x));
            if (ok && rec(k + 1))
                return true;
            std::size_t s = m;
            bool wrapped = true;
            while (s > 0) {
                --s;
                if (++pick[s] < cands[s].size()) {
                    wrapped = false;
                    break;
                }
                pick[s] = 0;
            }
            if (wrapped)
                return false;
        }
    };
    if (!rec(1))
        return std::nullopt;
    return make_homotopy(g, std::move(phi), HomotopyKind::Structured);
}

inline std::optional<PointedHomotopy> search_homotopy(const ComplexMorphism& f, const ComplexMorphism& g,
                                                      const Caps& caps = {},
                                                      HomotopyKind kind = HomotopyKind::Weak)
{
    return search_homotopy(f, g, caps.search, kind);
}

} // namespace xcb

#endif
