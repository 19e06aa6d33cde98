// Acceptance run: one PASS/FAIL line per criterion, each with a pinned time
// limit. Exit status is nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "xcb/xcb.hpp"

using namespace xcb;
using namespace fx;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    std::vector<std::string> problems;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            if (problems.size() < 5)
                problems.push_back(what);
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    }
    catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s < limit_s;
    bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("%s  %d  %-28s %7.3f s (limit %g s)  %s\n", pass ? "PASS" : "FAIL", id, title, s, limit_s,
                o.note.str().c_str());
    if (!in_time)
        std::printf("        over the time limit\n");
    for (const auto& p : o.problems)
        std::printf("        %s\n", p.c_str());
    std::fflush(stdout);
}

// --------------------------------------------------------------------------
// 1

std::vector<std::vector<Elem>> rows_of(const FinGroup& g)
{
    std::vector<std::vector<Elem>> t(g.order(), std::vector<Elem>(g.order()));
    for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b)
            t[a][b] = g.mul(a, b);
    return t;
}

/// Rebuilds a crossed module from raw tables, returning the first witness of
/// rejection or an empty string if it validates.
std::string rejection(const std::vector<std::vector<Elem>>& t1, const std::vector<std::vector<Elem>>& t2,
                      const std::vector<Elem>& bnd, const std::vector<Elem>& act, Elem id1, Elem id2)
{
    try {
        auto g1 = FinGroup::from_table(t1, id1);
        auto g2 = FinGroup::from_table(t2, id2);
        ReducedCrossedComplex c({g1, g2}, {GroupHom(g2, g1, bnd)}, {RightAction(g1, g2, act)});
        auto r = validate_complex(c);
        if (r.ok())
            return {};
        const auto& f = r.failures().front();
        return f.check + ": " + (f.witness.empty() ? "?" : f.witness);
    }
    catch (const Error& e) {
        return e.what();
    }
}

void axiom_suite(Outcome& o)
{
    std::mt19937 rng(20240601);
    const std::vector<std::pair<const char*, ReducedCrossedComplex>> cms{
        {"inner Z/4", inner_crossed_module(Z(4))},
        {"inner S3", inner_crossed_module(S3())},
        {"inner D4", inner_crossed_module(D4())},
        {"Z/4->Z/2", zmod()}};
    std::size_t rejected = 0;
    for (const auto& [name, c] : cms) {
        auto r = validate_complex(c);
        o.require(r.ok(), std::string(name) + " does not validate: " + r.str());
        for (const char* id : {"Xc3", "Xc4", "CM1", "CM2"}) {
            bool seen = false;
            for (const auto& ch : r.checked())
                seen = seen || ch.rfind(id, 0) == 0;
            o.require(seen, std::string(name) + ": " + id + " not checked");
        }
        const auto g1 = c.group(1), g2 = c.group(2);
        const auto t1 = rows_of(g1), t2 = rows_of(g2);
        const auto bnd = c.boundary(2).table();
        const auto act = c.action(2).table();
        // cells of the C_1 table, the C_2 table, the boundary and the action,
        // shuffled per kind and taken round-robin
        std::vector<std::vector<std::size_t>> cells{std::vector<std::size_t>(g1.order() * g1.order()),
                                                    std::vector<std::size_t>(g2.order() * g2.order()),
                                                    std::vector<std::size_t>(bnd.size()),
                                                    std::vector<std::size_t>(act.size())};
        for (auto& v : cells) {
            std::iota(v.begin(), v.end(), std::size_t{0});
            std::shuffle(v.begin(), v.end(), rng);
        }
        std::size_t made = 0;
        for (std::size_t round = 0; made < 20; ++round)
            for (int kind = 0; kind < 4 && made < 20; ++kind) {
                if (round >= cells[kind].size())
                    continue;
                const auto cell = cells[kind][round];
                auto m1 = t1;
                auto m2 = t2;
                auto mb = bnd;
                auto ma = act;
                auto bump = [&](Elem& v, std::size_t order) { v = (v + 1 + rng() % (order - 1)) % order; };
                if (kind == 0)
                    bump(m1[cell / g1.order()][cell % g1.order()], g1.order());
                else if (kind == 1)
                    bump(m2[cell / g2.order()][cell % g2.order()], g2.order());
                else if (kind == 2)
                    bump(mb[cell], g1.order());
                else
                    bump(ma[cell], g2.order());
                ++made;
                auto w = rejection(m1, m2, mb, ma, g1.identity(), g2.identity());
                o.require(!w.empty(), std::string(name) + ": mutation kind " + std::to_string(kind) + " cell "
                                          + std::to_string(cell) + " accepted");
                rejected += !w.empty();
            }
    }
    o.note << "4 modules valid, " << rejected << "/80 mutations rejected with witnesses";
}

// --------------------------------------------------------------------------
// 2

std::vector<ReducedCrossedComplex> order4_corpus()
{
    return {zmod(),
            z2_to_1(),
            z2_zero(),
            z2_to_z4(),
            inner_crossed_module(Z(2)),
            inner_crossed_module(Z(4)),
            inner_crossed_module(V4()),
            cm(GroupHom::trivial(Z(3), Z(2))),
            cm(hom(V4(), Z(2), {0, 1, 0, 1})),
            zero3(),
            z2_z4_z2(),
            z2_z4_z2_z2(),
            ReducedCrossedComplex(),
            ReducedCrossedComplex({Z(2)}, {}, {})};
}

void adjunctions(Outcome& o)
{
    const auto cs = order4_corpus();
    std::size_t equalities = 0;
    for (std::size_t m = 1; m <= 3; ++m)
        for (const auto& x : cs)
            for (const auto& y : cs) {
                auto a = truncate(x, m);
                auto d = truncate(y, m);
                auto tag = " m=" + std::to_string(m);
                auto l1 = enumerate_morphisms(skeleton(a, m), y).size();
                auto r1 = enumerate_morphisms(a, truncate(y, m)).size();
                o.require(l1 == r1, "sk/tr" + tag);
                o.require(l1 == oracle::count_morphisms(skeleton(a, m), y), "sk count vs oracle" + tag);
                auto l2 = enumerate_morphisms(truncate(x, m), d).size();
                auto r2 = enumerate_morphisms(x, coskeleton(d, m)).size();
                o.require(l2 == r2, "tr/cosk" + tag);
                o.require(r2 == oracle::count_morphisms(x, coskeleton(d, m)), "cosk count vs oracle" + tag);
                auto l3 = enumerate_morphisms(cotruncate(x, m), d).size();
                auto r3 = enumerate_morphisms(x, skeleton(d, m)).size();
                o.require(l3 == r3, "cotr/sk" + tag);
                o.require(l3 == oracle::count_morphisms(cotruncate(x, m), d), "cotr count vs oracle" + tag);
                equalities += 3;
            }
    o.note << cs.size() << " complexes, " << equalities << " cardinality equalities";
}

// --------------------------------------------------------------------------
// 3

/// Every pointed family C -> D(+1) in turn; the exhaustive homotopy oracle.
template <class Visit>
void for_each_family(const ReducedCrossedComplex& c, const ReducedCrossedComplex& d, Visit&& visit)
{
    MapFamily phi = trivial_family(c, d);
    std::vector<std::pair<std::size_t, Elem>> slots;
    for (std::size_t k = 1; k <= c.length(); ++k)
        for (Elem x = 0; x < c.group(k).order(); ++x)
            if (x != c.group(k).identity())
                slots.emplace_back(k, x);
    while (true) {
        visit(phi);
        std::size_t i = 0;
        for (; i < slots.size(); ++i) {
            auto [k, x] = slots[i];
            if (++phi[k - 1][x] < d.group(k + 1).order())
                break;
            phi[k - 1][x] = 0;
        }
        if (i == slots.size())
            return;
    }
}

double family_space(const ReducedCrossedComplex& c, const ReducedCrossedComplex& d)
{
    double s = 1;
    for (std::size_t k = 1; k <= c.length(); ++k)
        for (std::size_t i = 1; i < c.group(k).order(); ++i)
            s *= static_cast<double>(d.group(k + 1).order());
    return s;
}

void homotopy_determination(Outcome& o)
{
    auto m = zmod();
    auto id = ComplexMorphism::identity(m);
    MapFamily two{{0, 2}, {0, 0, 0, 0}};
    auto f = derive_target(id, two);
    o.require(f.map(2).table() == std::vector<Elem>{0, 3, 2, 1}, "phi_1(1)=2 derives the wrong f_2");
    o.require(validate_homotopy(f, id, two), "phi_1(1)=2 rejected");
    MapFamily one{{0, 1}, {0, 0, 0, 0}};
    o.require(!derive_target(id, one).map(2).is_homomorphism(), "phi_1(1)=1 derives a homomorphism");
    o.require(!validate_homotopy(id, id, one) && !validate_homotopy(f, id, one), "phi_1(1)=1 accepted");

    std::size_t pairs = 0, homotopic = 0, oracle_checked = 0;
    const auto cs = order4_corpus();
    for (const auto& a : cs)
        for (const auto& b : cs) {
            auto ms = enumerate_morphisms(a, b);
            const std::size_t n = ms.size();
            std::vector<std::vector<bool>> h(n, std::vector<bool>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    auto found = search_homotopy(ms[i], ms[j], Caps{});
                    h[i][j] = found.has_value();
                    if (found)
                        o.require(validate_homotopy(ms[i], ms[j], found->phi), "search returned an invalid family");
                    ++pairs;
                    homotopic += h[i][j];
                }
            // exhaustive family scan where the space is small
            if (family_space(a, b) <= 20000) {
                std::vector<std::vector<bool>> ex(n, std::vector<bool>(n));
                for (std::size_t j = 0; j < n; ++j)
                    for_each_family(a, b, [&](const MapFamily& phi) {
                        auto t = derive_target(ms[j], phi);
                        if (!validate_morphism(t).ok())
                            return;
                        for (std::size_t i = 0; i < n; ++i)
                            if (t == ms[i])
                                ex[i][j] = true;
                    });
                o.require(ex == h, "search disagrees with the family scan");
                ++oracle_checked;
            }
            for (std::size_t i = 0; i < n; ++i) {
                o.require(h[i][i], "not reflexive");
                for (std::size_t j = 0; j < n; ++j) {
                    o.require(h[i][j] == h[j][i], "not symmetric");
                    for (std::size_t k = 0; k < n && h[i][j]; ++k)
                        o.require(!h[j][k] || h[i][k], "not transitive");
                }
            }
        }
    o.note << pairs << " ordered pairs, " << homotopic << " homotopic, " << oracle_checked
           << " hom-sets scanned exhaustively";
}

// --------------------------------------------------------------------------
// 4 and 5

std::vector<ReducedCrossedComplex> length3() { return {zero3(), z2_z4_z2(), z2_q8_v4(), inner_s3_3()}; }

void pushout_suite(Outcome& o)
{
    std::size_t count = 0;
    for (const auto& a : length3())
        for (const auto& b : length3()) {
            auto ms = enumerate_morphisms(a, b);
            for (std::size_t i = 0; i < ms.size() && i < 4; ++i) {
                const auto& f = ms[i];
                auto np = n_pushout_below(f);
                auto fr = check_pushout_factorization(np);
                o.require(fr.ok(), "factorization: " + fr.str());
                for (std::size_t k = 1; k <= np.n; ++k) {
                    auto pi = induced_map(np.iota, k);
                    auto src = oracle::homology_order(f.source(), k);
                    auto tgt = oracle::homology_order(np.complex, k);
                    o.require(pi.source().order() == src && pi.target().order() == tgt,
                              "pi_" + std::to_string(k) + " orders disagree with the oracle");
                    if (k < np.n)
                        o.require(pi.is_bijective() && src == tgt, "pi_" + std::to_string(k) + "(iota) not iso");
                    else
                        o.require(pi.is_surjective(), "pi_n(iota) not surjective");
                }
                o.require(compare_pushout_homotopy_groups(np).ok(), "homotopy comparison report");
                auto ci = check_commutative_image(np.complex);
                o.require(ci.ok(), "commutative image: " + ci.str());
                ++count;
            }
        }
    o.require(count >= 20, "fewer than 20 morphisms");
    o.note << count << " morphisms";
}

void diagonal_suite(Outcome& o)
{
    std::size_t ident = 0, proj = 0;
    auto run = [&](const ComplexMorphism& p, const ComplexMorphism& f, std::size_t& counter) {
        auto dp = diagonal_pushout(p, f);
        auto r = check_diagonal_pushout(dp);
        o.require(r.ok(), r.str());
        o.require(is_weak_equivalence(dp.pushout.iota), "iota not a weak equivalence");
        o.require(is_trivial_fibration(dp.proj1_rho, true), "pi1*rho not a trivial fibration");
        // exactness elementwise: ker β trivial, im β = ker(E -> pullback)
        const std::size_t n = dp.pushout.n;
        o.require(dp.beta.is_injective(), "beta not injective");
        const auto e = dp.pushout.complex.group(n - 1);
        const auto pm = dp.proj1_rho.map(n - 1);
        const auto em = n >= 3 ? dp.pushout.complex.boundary(n - 1) : GroupHom::trivial(e, Z(1));
        std::set<Elem> im;
        for (Elem y = 0; y < dp.beta.source().order(); ++y)
            im.insert(dp.beta(y));
        for (Elem z = 0; z < e.order(); ++z) {
            bool in_kernel = pm(z) == pm.target().identity() && em(z) == em.target().identity();
            o.require(in_kernel == (im.count(z) > 0), "exactness at E fails elementwise");
        }
        ++counter;
    };
    for (const auto& h : {zmod(), z2_zero(), z2_to_z4(), inner_crossed_module(S3()), zero3(), z2_z4_z2()})
        for (const auto& g : {zmod(), z2_zero(), zero3(), z2_z4_z2(), inner_s3_3()}) {
            if (h.length() != g.length())
                continue;
            auto ms = enumerate_morphisms(h, g);
            for (std::size_t i = 0; i < ms.size() && i < 2; ++i)
                run(ComplexMorphism::identity(h), ms[i], ident);
        }
    auto a = inner_crossed_module(S3());
    for (const auto& h : {zmod(), z2_zero(), z2_z4_z2()}) {
        auto q = product_complex(h, a);
        o.require(is_trivial_fibration(q.proj1, true), "projection is not a trivial fibration");
        run(q.proj1, q.proj1, proj);
        run(q.proj1, q.proj2, proj);
        for (const auto& g : enumerate_morphisms(h, h))
            run(q.proj1, compose(g, q.proj1), proj);
    }
    o.require(ident + proj >= 10 && proj > 0, "too few diagonal pushouts");
    o.note << ident << " along identities, " << proj << " along projections";
}

// --------------------------------------------------------------------------
// 6

/// B^f with the top of E extended by a trivially acted Z/2.
NButterfly extend_top(const NButterfly& b)
{
    const std::size_t m = b.n - 1;
    auto ext = direct_product(b.E.group(m), Z(2));
    std::vector<FinGroup> gs;
    std::vector<GroupHom> bs;
    std::vector<RightAction> as;
    for (std::size_t k = 1; k < m; ++k)
        gs.push_back(b.E.group(k));
    gs.push_back(ext.group);
    for (std::size_t k = 2; k < m; ++k) {
        bs.push_back(b.E.boundary(k));
        as.push_back(b.E.action(k));
    }
    if (m >= 2) {
        bs.push_back(compose(b.E.boundary(m), ext.proj1));
        const auto e1 = b.E.group(1);
        std::vector<Elem> t(ext.group.order() * e1.order());
        for (Elem z = 0; z < ext.group.order(); ++z)
            for (Elem a = 0; a < e1.order(); ++a)
                t[z * e1.order() + a] = ext.pair(b.E.act(m, ext.first(z), a), ext.second(z));
        as.emplace_back(e1, ext.group, std::move(t));
    }
    auto out = b;
    out.E = ReducedCrossedComplex(gs, bs, as);
    std::vector<GroupHom> pm, fm;
    for (std::size_t k = 1; k < m; ++k) {
        pm.push_back(GroupHom(out.E.group(k), b.p.target().group(k), b.p.map(k).table()));
        fm.push_back(GroupHom(out.E.group(k), b.f.target().group(k), b.f.map(k).table()));
    }
    pm.push_back(compose(b.p.map(m), ext.proj1));
    fm.push_back(compose(b.f.map(m), ext.proj1));
    out.p = ComplexMorphism(out.E, b.p.target(), pm);
    out.f = ComplexMorphism(out.E, b.f.target(), fm);
    out.alpha = compose(ext.incl1, b.alpha);
    out.beta = compose(ext.incl1, b.beta);
    return out;
}

/// Z/2-graded V4 modules over Z/2, Z/4 and S3 with zero boundary; the
/// actor moves the generators of V4 = {0, 1, 2, 3}.
std::vector<ReducedCrossedComplex> v4_modules()
{
    auto v = V4();
    auto swap = [](Elem x, bool on) { return on && (x == 1 || x == 2) ? Elem(3 - x) : x; };
    auto za = cm(GroupHom::trivial(v, Z(2)), action(Z(2), v, [&](Elem x, Elem a) { return swap(x, a == 1); }));
    auto zb = cm(GroupHom::trivial(v, Z(4)), action(Z(4), v, [&](Elem x, Elem a) { return swap(x, a % 2 == 1); }));
    // Aut(V4) ≅ S3 acting tautologically; x^{ab} = (x^a)^b
    std::vector<std::vector<Elem>> autos;
    for (const auto& t : enumerate_homs(v, v))
        if (t.is_bijective())
            autos.push_back(t.table());
    const auto n = autos.size();
    std::vector<std::vector<Elem>> mul(n, std::vector<Elem>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<Elem> ab(4);
            for (Elem x = 0; x < 4; ++x)
                ab[x] = autos[c][autos[a][x]];
            mul[a][c] = static_cast<Elem>(std::find(autos.begin(), autos.end(), ab) - autos.begin());
        }
    Elem e = static_cast<Elem>(std::find(autos.begin(), autos.end(), std::vector<Elem>{0, 1, 2, 3}) - autos.begin());
    auto aut = FinGroup::from_table(mul, e);
    auto zc = cm(GroupHom::trivial(v, aut), action(aut, v, [&](Elem x, Elem a) { return autos[a][x]; }));
    return {za, zb, zc};
}

/// σ(y^{x}) != σ(y)^{x} for some x in the image of `via`.
bool breaks_equivariance(const GroupHom& sigma, const ReducedCrossedComplex& g, const GroupHom& via)
{
    for (Elem a = 0; a < via.source().order(); ++a)
        for (Elem y = 0; y < sigma.source().order(); ++y)
            if (sigma(g.act(g.length(), y, via(a))) != g.act(g.length(), sigma(y), via(a)))
                return true;
    return false;
}

void butterfly_suite(Outcome& o)
{
    // derived pairs (p, f)
    std::vector<std::pair<ComplexMorphism, ComplexMorphism>> pairs;
    const std::vector<ReducedCrossedComplex> bases{zmod(),     z2_zero(),   z2_to_z4(),     inner_crossed_module(S3()),
                                                   a3_in_s3(), zero3(),     z2_z4_z2(),     inner_s3_3(),
                                                   zero4()};
    for (const auto& h : bases)
        for (const auto& g : bases) {
            if (h.length() != g.length())
                continue;
            auto ms = enumerate_morphisms(h, g);
            for (std::size_t i = 0; i < ms.size() && i < 3; ++i)
                pairs.emplace_back(ComplexMorphism::identity(h), ms[i]);
        }
    auto acyc = inner_crossed_module(S3());
    for (const auto& h : {zmod(), z2_zero()}) {
        auto q = product_complex(h, acyc);
        pairs.emplace_back(q.proj1, q.proj2);
        pairs.emplace_back(q.proj1, q.proj1);
    }

    std::vector<NButterfly> bfs;
    for (const auto& [p, f] : pairs) {
        auto dp = diagonal_pushout(p, f);
        auto b = butterfly_from_diagonal(dp);
        auto r = validate_butterfly(b);
        o.require(r.ok(), "B^f fails: " + r.str());
        auto fb = fold(b);
        o.require(fb.estar.length() == dp.pushout.complex.length(), "fold length");
        for (std::size_t k = 1; k <= fb.estar.length(); ++k) {
            o.require(fb.estar.group(k) == dp.pushout.complex.group(k), "fold group " + std::to_string(k));
            if (k >= 2) {
                o.require(fb.estar.boundary(k) == dp.pushout.complex.boundary(k), "fold boundary " + std::to_string(k));
                o.require(fb.estar.action(k).table() == dp.pushout.complex.action(k).table(),
                          "fold action " + std::to_string(k));
            }
        }
        auto tf = check_fold_trivial_fibration(b);
        o.require(tf.ok(), "p* not a trivial fibration: " + tf.str());
        bool top = false;
        for (const auto& c : tf.checked())
            top = top || c == "top comparison iso";
        o.require(top, "top map not compared");
        bfs.push_back(b);
    }

    // single-axiom mutations
    auto exactly = [&](const NButterfly& nb, const std::string& id, std::size_t& counter) {
        auto r = validate_butterfly(nb);
        auto ids = r.failed_ids();
        o.require(ids == std::vector<std::string>{id}, id + " mutation failed " + std::to_string(ids.size())
                                                           + " axioms: " + r.str());
        ++counter;
    };
    std::size_t b1 = 0, b2 = 0, b3 = 0, b4 = 0;
    for (const auto& b : bfs) {
        // B1: one cell of α moved so that it stops being a homomorphism
        const auto hn = b.alpha.source();
        const auto em = b.alpha.target();
        for (Elem x = 1; x < hn.order() && b1 < 40; ++x)
            for (Elem v = 0; v < em.order(); ++v) {
                auto t = b.alpha.table();
                if (t[x] == v)
                    continue;
                t[x] = v;
                if (oracle::is_hom(hn, em, t))
                    continue;
                auto nb = b;
                nb.alpha = GroupHom(hn, em, t);
                exactly(nb, "B1", b1);
                break;
            }
        // B2: extra Z/2 in the top of E
        if (b2 < 40)
            exactly(extend_top(b), "B2", b2);
        // B3: α trivial where the top boundary of H is not
        if (b3 < 40 && !(b.H.boundary(b.n) == GroupHom::trivial(hn, b.H.group(b.n - 1)))) {
            auto nb = b;
            nb.alpha = GroupHom::trivial(hn, em);
            exactly(nb, "B3", b3);
        }
    }
    // B4: β twisted by an automorphism of G_n that the action does not respect
    auto v = V4();
    std::vector<GroupHom> autos;
    for (const auto& t : enumerate_homs(v, v))
        if (t.is_bijective())
            autos.push_back(t);
    for (const auto& g : v4_modules())
        for (const auto& h : {z2_zero(), v4_modules()[0], v4_modules()[1]}) {
            auto ms = enumerate_morphisms(h, g);
            for (const auto& f : ms) {
                auto b = butterfly_from_derived(ComplexMorphism::identity(h), f);
                o.require(validate_butterfly(b).ok(), "V4 butterfly invalid");
                for (const auto& sigma : autos) {
                    if (b4 >= 40 || !breaks_equivariance(sigma, g, b.f.map(1)))
                        continue;
                    auto nb = b;
                    nb.beta = compose(b.beta, sigma);
                    exactly(nb, "B4", b4);
                }
            }
        }
    o.require(bfs.size() >= 20, "fewer than 20 butterflies");
    for (auto c : {b1, b2, b3, b4})
        o.require(c >= 20, "fewer than 20 mutations for one axiom");
    o.note << bfs.size() << " butterflies valid; mutations B1 " << b1 << ", B2 " << b2 << ", B3 " << b3 << ", B4 "
           << b4;
}

// --------------------------------------------------------------------------
// 7

void coset_identities(Outcome& o)
{
    std::size_t at3 = 0, at4 = 0, distinct = 0, reps = 0;
    auto scan = [&](const std::vector<ReducedCrossedComplex>& cs, std::size_t& counter) {
        for (const auto& h : cs)
            for (const auto& g : cs) {
                auto ms = enumerate_morphisms(h, g);
                auto id = ComplexMorphism::identity(h);
                for (std::size_t i = 0; i < ms.size() && i < 6; ++i)
                    for (std::size_t j = 0; j < ms.size() && j < 6; ++j) {
                        auto s = search_homotopy(ms[i], ms[j], Caps{}, HomotopyKind::Structured);
                        if (!s)
                            continue;
                        bool trivial = s->phi == trivial_family(h, g);
                        if (trivial)
                            continue;
                        try {
                            auto im = induce_butterfly_morphism(id, *s);
                            o.require(im.checks.ok(), "coset identity: " + im.checks.str());
                            std::size_t here = 0;
                            for (const auto& c : im.checks.checked())
                                here += c.rfind("coset identity", 0) == 0;
                            o.require(here > 0, "no class representatives checked");
                            reps += here;
                        }
                        catch (const Error& e) {
                            o.require(false, e.what());
                        }
                        distinct += i != j;
                        ++counter;
                    }
            }
    };
    scan(length3(), at3);
    scan({zero4(), z2_z4_z2_z2()}, at4);
    o.require(at3 >= 5, "fewer than 5 homotopic pairs at n=3");
    o.require(at4 >= 2, "fewer than 2 homotopic pairs at n=4");
    o.note << at3 << " pairs at n=3, " << at4 << " at n=4 (" << distinct << " with f != g), " << reps
           << " representatives";
}

// --------------------------------------------------------------------------
// 8

void groupoid_pi0(Outcome& o)
{
    // morphisms of butterflies induced by structured homotopies between
    // endomorphisms, grouped by base
    std::vector<ButterflyMorphism> ms;
    for (const auto& h : {zmod(), zero3(), z2_z4_z2(), inner_crossed_module(S3()), zero4()}) {
        auto id = ComplexMorphism::identity(h);
        auto es = enumerate_morphisms(h, h);
        for (std::size_t i = 0; i < es.size() && i < 6; ++i)
            for (std::size_t j = 0; j < es.size() && j < 6; ++j)
                if (auto s = search_homotopy(es[i], es[j], Caps{}, HomotopyKind::Structured))
                    ms.push_back(induced_butterfly_morphism(id, *s));
    }
    std::size_t laws = 0;
    for (const auto& m : ms) {
        o.require(validate_butterfly_morphism(m).ok(), "induced morphism invalid");
        auto e0 = identity_butterfly_morphism(m.source);
        auto e1 = identity_butterfly_morphism(m.target);
        o.require(same_morphism(compose_butterfly_morphisms(m, e0), m), "right identity");
        o.require(same_morphism(compose_butterfly_morphisms(e1, m), m), "left identity");
        auto inv = invert_butterfly_morphism(m);
        o.require(validate_butterfly_morphism(inv).ok(), "inverse invalid");
        o.require(same_morphism(compose_butterfly_morphisms(inv, m), e0), "left inverse");
        o.require(same_morphism(compose_butterfly_morphisms(m, inv), e1), "right inverse");
        laws += 4;
    }
    for (const auto& a : ms)
        for (const auto& b : ms) {
            if (!(a.target == b.source))
                continue;
            for (const auto& c : ms) {
                if (!(b.target == c.source))
                    continue;
                auto l = compose_butterfly_morphisms(c, compose_butterfly_morphisms(b, a));
                auto r = compose_butterfly_morphisms(compose_butterfly_morphisms(c, b), a);
                o.require(same_morphism(l, r), "associativity");
                o.require(validate_butterfly_morphism(l).ok(), "composite invalid");
                ++laws;
            }
        }

    std::size_t merged = 0, separated = 0, weak_only = 0;
    for (const auto& h : {zmod(), zero3(), z2_z4_z2(), inner_crossed_module(S3()), z2_zero()}) {
        auto id = ComplexMorphism::identity(h);
        auto es = enumerate_morphisms(h, h);
        std::vector<NButterfly> bs;
        for (const auto& f : es)
            bs.push_back(butterfly_from_derived(id, f));
        auto r = pi0(bs);
        o.require(r.exact(), "pi0 indeterminate");
        for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t j = i + 1; j < es.size(); ++j) {
                bool same = r.component[i] == r.component[j];
                bool homotopic = search_homotopy(es[i], es[j], Caps{}, HomotopyKind::Structured).has_value();
                o.require(same == homotopic, "pi0 disagrees with the homotopy search");
                bool differ = false;
                for (std::size_t k = 1; k <= h.length(); ++k)
                    differ = differ || !(induced_map(es[i], k) == induced_map(es[j], k));
                if (differ)
                    o.require(!same, "pi0 merges maps with distinct induced pi maps");
                merged += homotopic;
                separated += differ;
                weak_only += !homotopic && search_homotopy(es[i], es[j], Caps{}).has_value();
            }
    }
    o.note << ms.size() << " morphisms, " << laws << " law instances; pi0 merged " << merged << ", separated "
           << separated << " (" << weak_only << " weak-only pairs kept apart)";
}

} // namespace

int main()
{
    criterion(1, "axiom suite", 1, axiom_suite);
    criterion(2, "adjunction cardinalities", 30, adjunctions);
    criterion(3, "homotopy determination", 30, homotopy_determination);
    criterion(4, "pushout suite", 60, pushout_suite);
    criterion(5, "diagonal suite", 60, diagonal_suite);
    criterion(6, "butterfly suite", 60, butterfly_suite);
    criterion(7, "induced coset identities", 30, coset_identities);
    criterion(8, "groupoid and pi0", 60, groupoid_pi0);
    return failures ? 1 : 0;
}
