// Small groups and complexes shared by the test suites.
#ifndef XCB_TESTS_FIXTURES_HPP
#define XCB_TESTS_FIXTURES_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "xcb/xcomplex.hpp"

namespace fx {

using namespace xcb;

inline FinGroup Z(std::size_t n) { return cyclic_group(n); }

inline FinGroup V4()
{
    return FinGroup::from_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, 0);
}

inline FinGroup S3() { return group_from_permutations({{1, 0, 2}, {1, 2, 0}}, 3); }

inline FinGroup D4() { return group_from_permutations({{1, 2, 3, 0}, {2, 1, 0, 3}}, 4); }

/// Quaternions: 0..7 = 1, -1, i, -i, j, -j, k, -k.
inline FinGroup Q8()
{
    // unit products of 1,i,j,k with sign: u[a][b] = (index, sign)
    static const int unit[4][4][2] = {{{0, 0}, {1, 0}, {2, 0}, {3, 0}},
                                      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
                                      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
                                      {{3, 0}, {2, 0}, {1, 1}, {0, 1}}};
    std::vector<std::vector<Elem>> t(8, std::vector<Elem>(8));
    for (Elem a = 0; a < 8; ++a)
        for (Elem b = 0; b < 8; ++b) {
            int ua = a / 2, sa = a % 2, ub = b / 2, sb = b % 2;
            int u = unit[ua][ub][0];
            int s = (sa + sb + unit[ua][ub][1]) % 2;
            t[a][b] = static_cast<Elem>(2 * u + s);
        }
    return FinGroup::from_table(t, 0, {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

inline GroupHom hom(const FinGroup& s, const FinGroup& t, std::vector<Elem> m)
{
    return GroupHom::checked(s, t, std::move(m));
}

inline GroupHom mod(std::size_t from, std::size_t to)
{
    std::vector<Elem> m(from);
    for (Elem a = 0; a < from; ++a)
        m[a] = a % to;
    return hom(Z(from), Z(to), m);
}

/// Z/a -> Z/b, 1 |-> g
inline GroupHom cyc(std::size_t a, std::size_t b, Elem g)
{
    std::vector<Elem> m(a);
    for (Elem x = 0; x < a; ++x)
        m[x] = static_cast<Elem>((x * g) % b);
    return hom(Z(a), Z(b), m);
}

inline RightAction action(const FinGroup& actor, const FinGroup& module, const std::function<Elem(Elem, Elem)>& f)
{
    std::vector<Elem> t(actor.order() * module.order());
    for (Elem a = 0; a < module.order(); ++a)
        for (Elem x = 0; x < actor.order(); ++x)
            t[a * actor.order() + x] = f(a, x);
    return RightAction(actor, module, t);
}

inline RightAction triv(const FinGroup& actor, const FinGroup& module)
{
    return RightAction::trivial(actor, module);
}

/// Crossed module C2 -> C1 with the given action.
inline ReducedCrossedComplex cm(const GroupHom& d, const RightAction& a) { return crossed_module(d, a); }

inline ReducedCrossedComplex cm(const GroupHom& d) { return crossed_module(d, triv(d.target(), d.source())); }

/// Complex with trivial actions everywhere.
inline ReducedCrossedComplex chain(const std::vector<GroupHom>& top_down)
{
    std::vector<FinGroup> g{top_down.back().target()};
    std::vector<GroupHom> b;
    std::vector<RightAction> a;
    for (auto it = top_down.rbegin(); it != top_down.rend(); ++it) {
        g.push_back(it->source());
        b.push_back(*it);
        a.push_back(triv(g[0], it->source()));
    }
    return ReducedCrossedComplex(g, b, a);
}

inline ReducedCrossedComplex zmod() { return cm(mod(4, 2)); }
inline ReducedCrossedComplex z2_to_1() { return cm(GroupHom::trivial(Z(2), Z(1))); }
inline ReducedCrossedComplex z2_zero() { return cm(GroupHom::trivial(Z(2), Z(2))); }
inline ReducedCrossedComplex z2_to_z4() { return cm(cyc(2, 4, 2)); }

/// Inclusion of the centre {e, z} of G with trivial action.
inline ReducedCrossedComplex centre_inclusion(const FinGroup& g)
{
    auto c = center(g);
    Elem z = c.at(1);
    return cm(hom(Z(2), g, {g.identity(), z}));
}

/// G -> G/Z(G) with G acting through a section of the projection.
inline ReducedCrossedComplex central_quotient(const FinGroup& g)
{
    auto q = quotient(g, center(g));
    const auto& reps = q.representatives;
    auto act = action(q.group, g, [&](Elem a, Elem x) { return g.conj(a, reps[x]); });
    return ReducedCrossedComplex({q.group, g}, {q.projection}, {act});
}

/// Z/3 = A_3 inside S_3 with conjugation.
inline ReducedCrossedComplex a3_in_s3()
{
    auto s3 = S3();
    Elem r = 0;
    for (Elem x = 0; x < 6; ++x)
        if (x != s3.identity() && s3.mul(x, s3.mul(x, x)) == s3.identity())
            r = x;
    auto inc = hom(Z(3), s3, {s3.identity(), r, s3.mul(r, r)});
    auto act = action(s3, Z(3), [&](Elem a, Elem x) {
        auto c = s3.conj(inc(a), x);
        for (Elem b = 0; b < 3; ++b)
            if (inc(b) == c)
                return b;
        return Elem{0};
    });
    return cm(inc, act);
}

/// Z/3 -> S_3 trivial boundary, odd permutations act by inversion.
inline ReducedCrossedComplex z3_sign()
{
    auto s3 = S3();
    auto z3 = Z(3);
    auto act = action(s3, z3, [&](Elem a, Elem x) {
        bool even = s3.mul(x, s3.mul(x, x)) == s3.identity();
        return even ? a : z3.inv(a);
    });
    return cm(GroupHom::trivial(z3, s3), act);
}

inline ReducedCrossedComplex zero3()
{
    return chain({GroupHom::trivial(Z(2), Z(2)), GroupHom::trivial(Z(2), Z(2))});
}

inline ReducedCrossedComplex z2_z4_z2() { return chain({cyc(2, 4, 2), mod(4, 2)}); }

/// Z/2 -> Q8 -> V4, acyclic.
inline ReducedCrossedComplex z2_q8_v4()
{
    auto cq = central_quotient(Q8());
    auto inc = hom(Z(2), Q8(), {0, 1});
    return ReducedCrossedComplex({cq.group(1), cq.group(2), Z(2)}, {cq.boundary(2), inc},
                                 {cq.action(2), triv(cq.group(1), Z(2))});
}

/// 1 -> S_3 -> S_3
inline ReducedCrossedComplex inner_s3_3()
{
    auto in = inner_crossed_module(S3());
    return ReducedCrossedComplex({S3(), S3(), Z(1)}, {in.boundary(2), GroupHom::trivial(Z(1), S3())},
                                 {in.action(2), triv(S3(), Z(1))});
}

inline ReducedCrossedComplex z2_z4_z2_z2()
{
    return chain({cyc(2, 4, 2), mod(4, 2), GroupHom::trivial(Z(2), Z(2))});
}

inline ReducedCrossedComplex zero4()
{
    auto t = GroupHom::trivial(Z(2), Z(2));
    return chain({t, t, t});
}

} // namespace fx

#endif
