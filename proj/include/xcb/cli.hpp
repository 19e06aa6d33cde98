/**
 * Command-line driver. Every subcommand loads a document, runs one operation
 * and prints a report whose lines start with PASS/FAIL and the check id.
 *
 * Exit codes: 0 success, 1 property refuted, 2 validation failure,
 * 3 parse error, 4 unresolved reference, 5 cap exceeded.
 */
#ifndef XCB_CLI_HPP
#define XCB_CLI_HPP

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xcb/document.hpp"

namespace xcb::cli {

enum Exit : int {
    Success = 0,
    Refuted = 1,
    Invalid = 2,
    Parse = 3,
    Unresolved = 4,
    Cap = 5,
};

inline int exit_code(Errc c)
{
    switch (c) {
    case Errc::ParseError: return Parse;
    case Errc::UnresolvedReference: return Unresolved;
    case Errc::SearchCapExceeded:
    case Errc::OrderCapExceeded:
    case Errc::ClosureBoundExceeded: return Cap;
    case Errc::IdentityViolated: return Refuted;
    default: return Invalid;
    }
}

namespace detail {

inline void print_report(std::ostream& out, const Report& r, const std::string& prefix = {})
{
    std::size_t fi = 0;
    const auto& fs = r.failures();
    for (const auto& c : r.checked()) {
        if (fi < fs.size() && fs[fi].check == c) {
            out << "FAIL  " << prefix << c << "  " << fs[fi].witness << "\n";
            ++fi;
        }
        else
            out << "PASS  " << prefix << c << "\n";
    }
}

/// Least representatives of the classes, labelled in C_k.
inline std::string class_list(const Subquotient& s, const FinGroup& ck)
{
    std::string out;
    for (Elem c = 0; c < s.order(); ++c)
        out += (c ? ", " : "") + ck.label(s.representative(c));
    return out;
}

inline void print_family(std::ostream& out, const ComplexMorphism& g, const MapFamily& phi)
{
    bool any = false;
    for (std::size_t k = 1; k <= phi.size(); ++k) {
        const auto c = g.source().group(k);
        const auto d = g.target().group(k + 1);
        for (Elem x = 0; x < phi[k - 1].size(); ++x)
            if (phi[k - 1][x] != d.identity()) {
                out << "phi_" << k << "(" << c.label(x) << ")=" << d.label(phi[k - 1][x]) << "\n";
                any = true;
            }
    }
    if (!any)
        out << "phi trivial\n";
}

inline Report axioms_suite(const Document& doc, const Caps& caps)
{
    Report r;
    for (const auto& [name, c] : doc.complexes)
        r.merge(validate_complex(c), "complex " + name + ": ");
    for (const auto& [name, f] : doc.morphisms)
        r.merge(validate_morphism(f), "morphism " + name + ": ");
    for (const auto& [name, h] : doc.homotopies)
        r.expect(validate_homotopy(h.derived, h.base, h.phi), "homotopy " + name, "family does not determine a morphism");
    for (const auto& [name, b] : doc.butterflies)
        r.merge(validate_butterfly(b, caps), "butterfly " + name + ": ");
    return r;
}

inline Report pushout_suite(const Document& doc, const Caps& caps)
{
    Report r;
    for (const auto& [name, f] : doc.morphisms) {
        if (f.length() < 2)
            continue;
        auto np = n_pushout_below(f, caps);
        const auto pre = "pushout " + name + ": ";
        r.merge(check_pushout_factorization(np), pre);
        r.merge(compare_pushout_homotopy_groups(np), pre);
        r.merge(check_coproduct_kernel_cokernel(np.coproduct), pre);
        r.merge(check_commutative_image(np.complex), pre);
        if (is_trivial_fibration(ComplexMorphism::identity(f.source()), true, caps)) {
            auto dp = diagonal_pushout(ComplexMorphism::identity(f.source()), f, caps);
            r.merge(check_diagonal_pushout(dp, caps), "diagonal " + name + ": ");
        }
    }
    for (const auto& [name, c] : doc.complexes)
        r.merge(check_commutative_image(c), "complex " + name + ": ");
    return r;
}

inline Report butterfly_suite(const Document& doc, const Caps& caps)
{
    Report r;
    for (const auto& [name, b] : doc.butterflies) {
        r.merge(validate_butterfly(b, caps), "butterfly " + name + ": ");
        r.merge(check_fold_trivial_fibration(b, caps), "butterfly " + name + ": ");
    }
    for (const auto& [name, f] : doc.morphisms) {
        if (f.length() < 2)
            continue;
        auto b = butterfly_from_derived(ComplexMorphism::identity(f.source()), f, caps);
        const auto pre = "derived " + name + ": ";
        r.merge(validate_butterfly(b, caps), pre);
        r.merge(check_fold_trivial_fibration(b, caps), pre);
    }
    return r;
}

inline Report coset_identity_suite(const Document& doc, const Caps& caps)
{
    Report r;
    for (const auto& [name, h] : doc.homotopies) {
        if (h.base.length() < 2)
            continue;
        auto im = induce_butterfly_morphism(ComplexMorphism::identity(h.base.source()), h, caps);
        r.merge(im.checks, "homotopy " + name + ": ");
        r.merge(validate_butterfly_morphism(im.morphism), "homotopy " + name + ": morphism ");
    }
    return r;
}

inline std::vector<std::string> split_names(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

} // namespace detail

/// Runs one command line (args exclude the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"finite reduced crossed complexes, pushouts and butterflies", "xcb"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string file, complex, morphism, pname, fname, gname, butterflies, emit, suite, caps_text;
    std::size_t degree = 0, cap = 0;
    bool structured = false;
    app.add_option("--caps", caps_text, "cap overrides, e.g. order=64,search=1000000 (also XCB_CAPS)");

    auto* validate = app.add_subcommand("validate", "load and validate every object of a document");
    auto* pi = app.add_subcommand("pi", "homotopy groups of a complex");
    pi->add_option("--complex", complex)->required();
    pi->add_option("--degree", degree);
    auto* pushout = app.add_subcommand("pushout", "n-pushout below a morphism");
    pushout->add_option("--morphism", morphism)->required();
    auto* diagonal = app.add_subcommand("diagonal", "diagonal pushout of a derived morphism");
    diagonal->add_option("--p", pname)->required();
    diagonal->add_option("--f", fname)->required();
    auto* butterfly = app.add_subcommand("butterfly", "butterfly of a derived morphism");
    butterfly->add_option("--p", pname)->required();
    butterfly->add_option("--f", fname)->required();
    butterfly->add_option("--emit", emit, "write the butterfly as a document");
    auto* homotopic = app.add_subcommand("homotopic", "search a pointed homotopy f = g");
    homotopic->add_option("--f", fname)->required();
    homotopic->add_option("--g", gname)->required();
    homotopic->add_option("--cap", cap, "search budget");
    homotopic->add_flag("--structured", structured, "require derivation/hom components");
    auto* pi0c = app.add_subcommand("pi0", "connected components of butterflies");
    pi0c->add_option("--butterflies", butterflies)->required();
    pi0c->add_option("--cap", cap, "search budget per pair");
    auto* check = app.add_subcommand("check", "run a property suite over a document");
    check->add_option("--suite", suite)->required()->check(CLI::IsMember({"axioms", "pushout", "butterfly", "appendix"}));
    for (auto* s : {validate, pi, pushout, diagonal, butterfly, homotopic, pi0c, check})
        s->add_option("file", file, "document")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    }
    catch (const CLI::ParseError& e) {
        err << "ParseError: " << e.what() << "\n" << app.help();
        return Parse;
    }

    try {
        Caps caps = Caps::from_env();
        if (!caps_text.empty())
            caps = caps.with_overrides(caps_text);
        if (cap)
            caps.search = cap;
        const Document doc = load_document_file(file, caps);

        if (*validate) {
            for (const auto& [n, g] : doc.groups)
                out << "group " << n << ": order " << g.order() << "\n";
            for (const auto& [n, c] : doc.complexes)
                out << "complex " << n << ": valid, length " << c.length() << "\n";
            for (const auto& [n, f] : doc.morphisms)
                out << "morphism " << n << ": valid\n";
            for (const auto& [n, h] : doc.homotopies)
                out << "homotopy " << n << ": valid\n";
            for (const auto& [n, b] : doc.butterflies)
                out << "butterfly " << n << ": B1-B4 pass\n";
            out << "OK\n";
            return Success;
        }
        if (*pi) {
            const auto& c = xcb::detail::lookup(doc.complexes, complex, "--complex");
            std::size_t lo = degree ? degree : 1, hi = degree ? degree : c.length();
            for (std::size_t k = lo; k <= hi; ++k) {
                auto s = homotopy_group(c, k);
                out << "pi_" << k << "(" << complex << "): order " << s.order() << "  {" << detail::class_list(s, c.group(k))
                    << "}\n";
            }
            return Success;
        }
        if (*pushout) {
            const auto& f = xcb::detail::lookup(doc.morphisms, morphism, "--morphism");
            auto np = n_pushout_below(f, caps);
            out << "middle group order " << np.complex.group(np.n - 1).order() << "\n";
            Report r = check_pushout_factorization(np);
            r.merge(compare_pushout_homotopy_groups(np));
            r.merge(check_coproduct_kernel_cokernel(np.coproduct));
            r.merge(check_commutative_image(np.complex));
            detail::print_report(out, r);
            return r.ok() ? Success : Refuted;
        }
        if (*diagonal) {
            const auto& p = xcb::detail::lookup(doc.morphisms, pname, "--p");
            const auto& f = xcb::detail::lookup(doc.morphisms, fname, "--f");
            auto dp = diagonal_pushout(p, f, caps);
            out << "degree " << dp.pushout.n - 1 << " group order " << dp.pushout.complex.group(dp.pushout.n - 1).order()
                << "\n";
            auto r = check_diagonal_pushout(dp, caps);
            detail::print_report(out, r);
            return r.ok() ? Success : Refuted;
        }
        if (*butterfly) {
            const auto& p = xcb::detail::lookup(doc.morphisms, pname, "--p");
            const auto& f = xcb::detail::lookup(doc.morphisms, fname, "--f");
            auto b = butterfly_from_derived(p, f, caps);
            Report r = validate_butterfly(b, caps);
            r.merge(check_fold_trivial_fibration(b, caps));
            detail::print_report(out, r);
            if (!emit.empty()) {
                Document d;
                d.complexes.emplace("Q", p.source());
                d.complexes.emplace("H", b.H);
                d.complexes.emplace("G", b.G);
                d.complexes.emplace("E", b.E);
                d.butterflies.emplace("B", b);
                std::ofstream o(emit);
                if (!o)
                    throw Error(Errc::ParseError, emit + ": cannot write");
                o << emit_document(d).dump(2) << "\n";
                out << "wrote " << emit << "\n";
            }
            return r.ok() ? Success : Refuted;
        }
        if (*homotopic) {
            const auto& f = xcb::detail::lookup(doc.morphisms, fname, "--f");
            const auto& g = xcb::detail::lookup(doc.morphisms, gname, "--g");
            auto h = search_homotopy(f, g, caps.search, structured ? HomotopyKind::Structured : HomotopyKind::Weak);
            if (!h) {
                out << "not homotopic: no pointed family derives " << fname << " from " << gname << "\n";
                for (std::size_t k = 1; k <= f.length(); ++k)
                    if (!(induced_map(f, k) == induced_map(g, k)))
                        out << "witness: pi_" << k << " maps differ\n";
                return Refuted;
            }
            out << "homotopic\n";
            detail::print_family(out, g, h->phi);
            return Success;
        }
        if (*pi0c) {
            std::vector<NButterfly> bs;
            auto names = detail::split_names(butterflies);
            for (const auto& n : names)
                bs.push_back(xcb::detail::lookup(doc.butterflies, n, "--butterflies"));
            auto r = pi0(bs, caps);
            out << r.classes.size() << " classes\n";
            for (const auto& c : r.classes) {
                out << "{";
                for (std::size_t i = 0; i < c.size(); ++i)
                    out << (i ? ", " : "") << names[c[i]];
                out << "}\n";
            }
            for (auto [i, j] : r.indeterminate)
                out << "indeterminate: " << names[i] << " " << names[j] << "\n";
            return r.exact() ? Success : Cap;
        }
        if (*check) {
            Report r;
            if (suite == "axioms")
                r = detail::axioms_suite(doc, caps);
            else if (suite == "pushout")
                r = detail::pushout_suite(doc, caps);
            else if (suite == "butterfly")
                r = detail::butterfly_suite(doc, caps);
            else
                r = detail::coset_identity_suite(doc, caps);
            detail::print_report(out, r);
            out << r.checked().size() << " checks, " << r.failures().size() << " failed\n";
            return r.ok() ? Success : Refuted;
        }
    }
    catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code(e.code());
    }
    return Success;
}

} // namespace xcb::cli

#endif
