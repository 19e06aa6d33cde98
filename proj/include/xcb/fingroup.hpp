/**
 * Finite groups as dense Cayley tables, homomorphisms, right actions,
 * subgroups, quotients, products and exhaustive homomorphism enumeration.
 *
 * Elements are indices in [0, order). Every value type here is immutable
 * after construction; FinGroup shares its tables, so copies are cheap.
 */
#ifndef XCB_FINGROUP_HPP
#define XCB_FINGROUP_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xcb/core.hpp"

namespace xcb {

using Elem = std::uint32_t;

namespace detail {

struct GroupData {
    std::size_t order = 1;
    Elem identity = 0;
    std::vector<Elem> mul;
    std::vector<Elem> inv;
    std::vector<std::string> labels;
    bool abelian = true;
};

inline std::shared_ptr<const GroupData> make_group_data(std::size_t order, Elem identity, std::vector<Elem> mul,
                                                        std::vector<std::string> labels)
{
    auto d = std::make_shared<GroupData>();
    d->order = order;
    d->identity = identity;
    d->mul = std::move(mul);
    d->inv.assign(order, identity);
    for (Elem a = 0; a < order; ++a)
        for (Elem b = 0; b < order; ++b)
            if (d->mul[a * order + b] == identity) {
                d->inv[a] = b;
                break;
            }
    for (Elem a = 0; a < order && d->abelian; ++a)
        for (Elem b = a + 1; b < order; ++b)
            if (d->mul[a * order + b] != d->mul[b * order + a]) {
                d->abelian = false;
                break;
            }
    if (labels.size() != order) {
        labels.clear();
        for (Elem a = 0; a < order; ++a)
            labels.push_back(std::to_string(a));
    }
    d->labels = std::move(labels);
    return d;
}

} // namespace detail

class FinGroup {
public:
    /// The trivial group.
    FinGroup() : d_(trivial_data()) {}

    /**
     * Validates a Cayley table: range, identity, associativity, inverses
     * (in that order). Throws InvalidTable, NoIdentity, NotAssociative,
     * NoInverse or OrderCapExceeded.
     */
    static FinGroup from_table(const std::vector<std::vector<Elem>>& table, Elem identity,
                               std::vector<std::string> labels = {}, const Caps& caps = {})
    {
        const std::size_t n = table.size();
        if (n == 0)
            throw Error(Errc::InvalidTable, "empty table");
        if (n > caps.order)
            throw Error(Errc::OrderCapExceeded, "order " + std::to_string(n) + " exceeds cap "
                                                    + std::to_string(caps.order));
        if (identity >= n)
            throw Error(Errc::InvalidTable, "identity index " + std::to_string(identity) + " out of range");
        std::vector<Elem> mul(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            if (table[a].size() != n)
                throw Error(Errc::InvalidTable, "row " + std::to_string(a) + " has length "
                                                    + std::to_string(table[a].size()) + ", expected "
                                                    + std::to_string(n));
            for (std::size_t b = 0; b < n; ++b) {
                if (table[a][b] >= n)
                    throw Error(Errc::InvalidTable, "cell (" + std::to_string(a) + "," + std::to_string(b)
                                                        + ") out of range");
                mul[a * n + b] = table[a][b];
            }
        }
        auto at = [&](Elem a, Elem b) { return mul[a * n + b]; };
        for (Elem a = 0; a < n; ++a)
            if (at(identity, a) != a || at(a, identity) != a)
                throw Error(Errc::NoIdentity, "element " + std::to_string(identity)
                                                  + " is not a two-sided identity at " + std::to_string(a));
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                for (Elem c = 0; c < n; ++c)
                    if (at(at(a, b), c) != at(a, at(b, c)))
                        throw Error(Errc::NotAssociative, "(" + std::to_string(a) + "," + std::to_string(b)
                                                              + "," + std::to_string(c) + ")");
        for (Elem a = 0; a < n; ++a) {
            bool found = false;
            for (Elem b = 0; b < n && !found; ++b)
                found = at(a, b) == identity && at(b, a) == identity;
            if (!found)
                throw Error(Errc::NoInverse, "element " + std::to_string(a));
        }
        return FinGroup(detail::make_group_data(n, identity, std::move(mul), std::move(labels)));
    }

    /// Builds from a table already known to be a group (internal constructions).
    static FinGroup trusted(std::size_t order, Elem identity, std::vector<Elem> flat_mul,
                            std::vector<std::string> labels = {})
    {
        return FinGroup(detail::make_group_data(order, identity, std::move(flat_mul), std::move(labels)));
    }

    std::size_t order() const noexcept { return d_->order; }
    Elem identity() const noexcept { return d_->identity; }
    Elem mul(Elem a, Elem b) const noexcept { return d_->mul[a * d_->order + b]; }
    Elem inv(Elem a) const noexcept { return d_->inv[a]; }
    /// x^-1 a x
    Elem conj(Elem a, Elem x) const noexcept { return mul(mul(inv(x), a), x); }
    bool is_abelian() const noexcept { return d_->abelian; }
    bool is_trivial() const noexcept { return d_->order == 1; }
    const std::string& label(Elem a) const { return d_->labels.at(a); }
    const std::vector<std::string>& labels() const noexcept { return d_->labels; }
    const std::vector<Elem>& flat_table() const noexcept { return d_->mul; }

    std::vector<std::vector<Elem>> table() const
    {
        std::vector<std::vector<Elem>> t(order(), std::vector<Elem>(order()));
        for (Elem a = 0; a < order(); ++a)
            for (Elem b = 0; b < order(); ++b)
                t[a][b] = mul(a, b);
        return t;
    }

    std::vector<Elem> elements() const
    {
        std::vector<Elem> v(order());
        std::iota(v.begin(), v.end(), Elem{0});
        return v;
    }

    /// Same multiplication table and identity; labels are presentation only.
    friend bool operator==(const FinGroup& a, const FinGroup& b)
    {
        return a.d_ == b.d_
               || (a.d_->order == b.d_->order && a.d_->identity == b.d_->identity && a.d_->mul == b.d_->mul);
    }

    FinGroup with_labels(std::vector<std::string> labels) const
    {
        return trusted(order(), identity(), d_->mul, std::move(labels));
    }

private:
    explicit FinGroup(std::shared_ptr<const detail::GroupData> d) : d_(std::move(d)) {}

    static std::shared_ptr<const detail::GroupData> trivial_data()
    {
        static const auto d = detail::make_group_data(1, 0, {0}, {"e"});
        return d;
    }

    std::shared_ptr<const detail::GroupData> d_;
};

inline FinGroup cyclic_group(std::size_t n)
{
    std::vector<Elem> mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            mul[a * n + b] = static_cast<Elem>((a + b) % n);
    return FinGroup::trusted(n, 0, std::move(mul));
}

// --------------------------------------------------------------------------
// Permutation groups

using Perm = std::vector<Elem>;

/// Cycle notation with 1-based points, "()" for the identity.
inline std::string cycle_string(const Perm& p)
{
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i)
            continue;
        out += "(";
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first)
                out += " ";
            out += std::to_string(j + 1);
            first = false;
            j = p[j];
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

/**
 * Closure of the generators under composition, breadth-first from the
 * identity. The product a*b applies a first, then b. Element 0 is the identity;
 * the remaining order is discovery order.
 */
inline FinGroup group_from_permutations(const std::vector<Perm>& generators, std::size_t degree,
                                        const Caps& caps = {})
{
    for (std::size_t g = 0; g < generators.size(); ++g) {
        const auto& p = generators[g];
        if (p.size() != degree)
            throw Error(Errc::NotAPermutation, "generator " + std::to_string(g) + " acts on "
                                                   + std::to_string(p.size()) + " points, expected "
                                                   + std::to_string(degree));
        std::vector<bool> hit(degree, false);
        for (auto x : p) {
            if (x >= degree || hit[x])
                throw Error(Errc::NotAPermutation, "generator " + std::to_string(g) + " is not a bijection");
            hit[x] = true;
        }
    }
    auto compose = [](const Perm& a, const Perm& b) {
        Perm c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            c[i] = b[a[i]];
        return c;
    };
    Perm id(degree);
    std::iota(id.begin(), id.end(), Elem{0});
    std::vector<Perm> elems{id};
    std::map<Perm, Elem> index{{id, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& s : generators) {
            auto next = compose(elems[head], s);
            if (index.emplace(next, static_cast<Elem>(elems.size())).second) {
                elems.push_back(std::move(next));
                if (elems.size() > caps.closure)
                    throw Error(Errc::ClosureBoundExceeded, "closure exceeds " + std::to_string(caps.closure)
                                                                + " elements");
            }
        }
    }
    const std::size_t n = elems.size();
    std::vector<Elem> mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            mul[a * n + b] = index.at(compose(elems[a], elems[b]));
    std::vector<std::string> labels;
    for (const auto& p : elems)
        labels.push_back(cycle_string(p));
    return FinGroup::trusted(n, 0, std::move(mul), std::move(labels));
}

// --------------------------------------------------------------------------
// Homomorphisms

/**
 * A set map between two groups, stored as a table of target indices.
 * Construction only range-checks; `is_homomorphism` decides the rest. Maps
 * produced by the homotopy formulas pass through this type before being
 * validated.
 */
class GroupHom {
public:
    GroupHom() = default;

    GroupHom(FinGroup source, FinGroup target, std::vector<Elem> map)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(map))
    {
        if (map_.size() != source_.order())
            throw Error(Errc::InvalidTable, "map has " + std::to_string(map_.size()) + " entries for a group of order "
                                                + std::to_string(source_.order()));
        for (auto v : map_)
            if (v >= target_.order())
                throw Error(Errc::InvalidTable, "map entry " + std::to_string(v) + " out of range");
    }

    /// As the plain constructor, but throws NotAHomomorphism with a witness pair.
    static GroupHom checked(FinGroup source, FinGroup target, std::vector<Elem> map)
    {
        GroupHom h(std::move(source), std::move(target), std::move(map));
        if (auto w = h.hom_violation())
            throw Error(Errc::NotAHomomorphism, "f(" + h.source_.label(w->first) + "*" + h.source_.label(w->second)
                                                    + ") != f(" + h.source_.label(w->first) + ")*f("
                                                    + h.source_.label(w->second) + ")");
        return h;
    }

    static GroupHom identity(const FinGroup& g) { return GroupHom(g, g, g.elements()); }

    static GroupHom trivial(const FinGroup& s, const FinGroup& t)
    {
        return GroupHom(s, t, std::vector<Elem>(s.order(), t.identity()));
    }

    Elem operator()(Elem a) const { return map_[a]; }
    const FinGroup& source() const noexcept { return source_; }
    const FinGroup& target() const noexcept { return target_; }
    const std::vector<Elem>& table() const noexcept { return map_; }

    /// First pair (a,b) with f(ab) != f(a)f(b); identity preservation is the pair (e,e).
    std::optional<std::pair<Elem, Elem>> hom_violation() const
    {
        const Elem e = source_.identity();
        if (map_[e] != target_.identity())
            return std::pair{e, e};
        for (Elem a = 0; a < source_.order(); ++a)
            for (Elem b = 0; b < source_.order(); ++b)
                if (map_[source_.mul(a, b)] != target_.mul(map_[a], map_[b]))
                    return std::pair{a, b};
        return std::nullopt;
    }

    bool is_homomorphism() const { return !hom_violation(); }

    bool is_trivial() const
    {
        return std::all_of(map_.begin(), map_.end(), [&](Elem v) { return v == target_.identity(); });
    }

    bool is_injective() const
    {
        std::vector<bool> hit(target_.order(), false);
        for (auto v : map_) {
            if (hit[v])
                return false;
            hit[v] = true;
        }
        return true;
    }

    bool is_surjective() const
    {
        std::vector<bool> hit(target_.order(), false);
        std::size_t count = 0;
        for (auto v : map_)
            if (!hit[v]) {
                hit[v] = true;
                ++count;
            }
        return count == target_.order();
    }

    bool is_bijective() const { return source_.order() == target_.order() && is_injective(); }

    /// Inverse of a bijection.
    GroupHom inverse() const
    {
        if (!is_bijective())
            throw Error(Errc::PreconditionFailed, "inverse of a non-bijective map");
        std::vector<Elem> inv(map_.size());
        for (Elem a = 0; a < map_.size(); ++a)
            inv[map_[a]] = a;
        return GroupHom(target_, source_, std::move(inv));
    }

    /// Sorted distinct image elements.
    std::vector<Elem> image_elements() const
    {
        std::vector<Elem> img(map_);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        return img;
    }

    std::vector<Elem> kernel_elements() const
    {
        std::vector<Elem> ker;
        for (Elem a = 0; a < map_.size(); ++a)
            if (map_[a] == target_.identity())
                ker.push_back(a);
        return ker;
    }

    friend bool operator==(const GroupHom& a, const GroupHom& b)
    {
        return a.map_ == b.map_ && a.source_ == b.source_ && a.target_ == b.target_;
    }

private:
    FinGroup source_;
    FinGroup target_;
    std::vector<Elem> map_{0};
};

/// g ∘ f
inline GroupHom compose(const GroupHom& g, const GroupHom& f)
{
    if (!(f.target() == g.source()))
        throw Error(Errc::TargetMismatch, "composition of non-composable maps");
    std::vector<Elem> m(f.source().order());
    for (Elem a = 0; a < m.size(); ++a)
        m[a] = g(f(a));
    return GroupHom(f.source(), g.target(), std::move(m));
}

// --------------------------------------------------------------------------
// Right actions

/// A right action of `actor` on `module`, a^x stored at [a * |actor| + x].
class RightAction {
public:
    RightAction() = default;

    RightAction(FinGroup actor, FinGroup module, std::vector<Elem> table)
        : actor_(std::move(actor)), module_(std::move(module)), table_(std::move(table))
    {
        if (table_.size() != actor_.order() * module_.order())
            throw Error(Errc::InvalidTable, "action table has wrong size");
        for (auto v : table_)
            if (v >= module_.order())
                throw Error(Errc::InvalidTable, "action entry out of range");
    }

    static RightAction trivial(const FinGroup& actor, const FinGroup& module)
    {
        std::vector<Elem> t(actor.order() * module.order());
        for (Elem a = 0; a < module.order(); ++a)
            for (Elem x = 0; x < actor.order(); ++x)
                t[a * actor.order() + x] = a;
        return RightAction(actor, module, std::move(t));
    }

    /// a^x = x^-1 a x
    static RightAction conjugation(const FinGroup& g)
    {
        std::vector<Elem> t(g.order() * g.order());
        for (Elem a = 0; a < g.order(); ++a)
            for (Elem x = 0; x < g.order(); ++x)
                t[a * g.order() + x] = g.conj(a, x);
        return RightAction(g, g, std::move(t));
    }

    /// a^y := a^{via(y)} for via: new actor -> actor.
    static RightAction through(const RightAction& base, const GroupHom& via)
    {
        const auto& actor = via.source();
        std::vector<Elem> t(actor.order() * base.module().order());
        for (Elem a = 0; a < base.module().order(); ++a)
            for (Elem y = 0; y < actor.order(); ++y)
                t[a * actor.order() + y] = base(a, via(y));
        return RightAction(actor, base.module(), std::move(t));
    }

    Elem operator()(Elem a, Elem x) const { return table_[a * actor_.order() + x]; }
    const FinGroup& actor() const noexcept { return actor_; }
    const FinGroup& module() const noexcept { return module_; }
    const std::vector<Elem>& table() const noexcept { return table_; }

    /// First failing action law as (law, witness), or nothing.
    std::optional<std::pair<std::string, std::string>> violation() const
    {
        const auto& M = module_;
        const auto& X = actor_;
        for (Elem a = 0; a < M.order(); ++a)
            if ((*this)(a, X.identity()) != a)
                return std::pair{std::string("unit"), "a=" + M.label(a)};
        for (Elem a = 0; a < M.order(); ++a)
            for (Elem x = 0; x < X.order(); ++x)
                for (Elem y = 0; y < X.order(); ++y)
                    if ((*this)((*this)(a, x), y) != (*this)(a, X.mul(x, y)))
                        return std::pair{std::string("compatibility"),
                                         "a=" + M.label(a) + " x=" + X.label(x) + " y=" + X.label(y)};
        for (Elem x = 0; x < X.order(); ++x)
            for (Elem a = 0; a < M.order(); ++a)
                for (Elem b = 0; b < M.order(); ++b)
                    if ((*this)(M.mul(a, b), x) != M.mul((*this)(a, x), (*this)(b, x)))
                        return std::pair{std::string("automorphism"),
                                         "a=" + M.label(a) + " b=" + M.label(b) + " x=" + X.label(x)};
        return std::nullopt;
    }

    friend bool operator==(const RightAction& a, const RightAction& b)
    {
        return a.table_ == b.table_ && a.actor_ == b.actor_ && a.module_ == b.module_;
    }

private:
    FinGroup actor_;
    FinGroup module_;
    std::vector<Elem> table_{0};
};

// --------------------------------------------------------------------------
// Subgroups

/// A subgroup re-materialized as a standalone group. Element i of `group`
/// is the i-th smallest parent index, so `inclusion` is order preserving.
struct Subgroup {
    FinGroup group;
    GroupHom inclusion;

    /// Index in `group` of a parent element, if it lies in the subgroup.
    std::optional<Elem> find(Elem parent_elem) const
    {
        const auto& t = inclusion.table();
        auto it = std::lower_bound(t.begin(), t.end(), parent_elem);
        if (it == t.end() || *it != parent_elem)
            return std::nullopt;
        return static_cast<Elem>(it - t.begin());
    }

    bool contains(Elem parent_elem) const { return find(parent_elem).has_value(); }
    std::size_t order() const { return group.order(); }
};

inline bool is_subgroup(const FinGroup& g, std::span<const Elem> elems)
{
    std::vector<bool> in(g.order(), false);
    for (auto a : elems)
        in.at(a) = true;
    if (!in[g.identity()])
        return false;
    for (auto a : elems) {
        if (!in[g.inv(a)])
            return false;
        for (auto b : elems)
            if (!in[g.mul(a, b)])
                return false;
    }
    return true;
}

/// Throws NotASubgroup naming the failing closure condition.
inline Subgroup subgroup(const FinGroup& parent, std::span<const Elem> elems)
{
    std::vector<Elem> sorted(elems.begin(), elems.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Elem> local(parent.order(), static_cast<Elem>(-1));
    for (Elem i = 0; i < sorted.size(); ++i) {
        if (sorted[i] >= parent.order())
            throw Error(Errc::NotASubgroup, "element out of range");
        local[sorted[i]] = i;
    }
    if (local[parent.identity()] == static_cast<Elem>(-1))
        throw Error(Errc::NotASubgroup, "identity missing");
    const std::size_t n = sorted.size();
    std::vector<Elem> mul(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto p = parent.mul(sorted[i], sorted[j]);
            if (local[p] == static_cast<Elem>(-1))
                throw Error(Errc::NotASubgroup, "product " + parent.label(sorted[i]) + "*" + parent.label(sorted[j])
                                                    + " escapes");
            mul[i * n + j] = local[p];
        }
    std::vector<std::string> labels;
    for (auto a : sorted)
        labels.push_back(parent.label(a));
    auto g = FinGroup::trusted(n, local[parent.identity()], std::move(mul), std::move(labels));
    return Subgroup{g, GroupHom(g, parent, sorted)};
}

/// Sorted elements of the subgroup generated by `gens`.
inline std::vector<Elem> generated(const FinGroup& g, std::span<const Elem> gens)
{
    std::vector<bool> in(g.order(), false);
    std::vector<Elem> out{g.identity()};
    in[g.identity()] = true;
    for (std::size_t head = 0; head < out.size(); ++head)
        for (auto s : gens) {
            auto next = g.mul(out[head], s);
            if (!in[next]) {
                in[next] = true;
                out.push_back(next);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

struct KernelImage {
    Subgroup kernel;
    Subgroup image;
};

inline KernelImage hom_kernel_image(const GroupHom& f)
{
    auto ker = f.kernel_elements();
    auto img = f.image_elements();
    return {subgroup(f.source(), ker), subgroup(f.target(), img)};
}

inline std::vector<Elem> center(const FinGroup& g)
{
    std::vector<Elem> z;
    for (Elem a = 0; a < g.order(); ++a) {
        bool central = true;
        for (Elem b = 0; b < g.order() && central; ++b)
            central = g.mul(a, b) == g.mul(b, a);
        if (central)
            z.push_back(a);
    }
    return z;
}

// --------------------------------------------------------------------------
// Quotients

/**
 * G/N with cosets numbered by ascending least representative; class 0
 * therefore holds the identity whenever the identity is element 0.
 */
struct Quotient {
    FinGroup group;
    GroupHom projection;
    std::vector<Elem> representatives;
};

/// First (n, g) with g^-1 n g outside N, if any.
inline std::optional<std::pair<Elem, Elem>> normality_violation(const FinGroup& g, std::span<const Elem> normal)
{
    std::vector<bool> in(g.order(), false);
    for (auto a : normal)
        in[a] = true;
    for (auto n : normal)
        for (Elem x = 0; x < g.order(); ++x)
            if (!in[g.conj(n, x)])
                return std::pair{n, x};
    return std::nullopt;
}

inline Quotient quotient(const FinGroup& g, std::span<const Elem> normal)
{
    if (!is_subgroup(g, normal))
        throw Error(Errc::NotASubgroup, "quotient by a non-subgroup");
    if (auto w = normality_violation(g, normal))
        throw Error(Errc::NotNormal, "conjugate of " + g.label(w->first) + " by " + g.label(w->second)
                                         + " escapes the subgroup");
    const Elem none = static_cast<Elem>(-1);
    std::vector<Elem> cls(g.order(), none);
    std::vector<Elem> reps;
    for (Elem a = 0; a < g.order(); ++a) {
        if (cls[a] != none)
            continue;
        const auto c = static_cast<Elem>(reps.size());
        reps.push_back(a);
        for (auto n : normal)
            cls[g.mul(a, n)] = c;
    }
    const std::size_t m = reps.size();
    std::vector<Elem> mul(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            mul[i * m + j] = cls[g.mul(reps[i], reps[j])];
    std::vector<std::string> labels;
    for (auto r : reps)
        labels.push_back("[" + g.label(r) + "]");
    auto q = FinGroup::trusted(m, cls[g.identity()], std::move(mul), std::move(labels));
    return {q, GroupHom(g, q, std::move(cls)), std::move(reps)};
}

/// target / image(f). Throws ImageNotNormal.
inline Quotient cokernel(const GroupHom& f)
{
    auto img = f.image_elements();
    if (auto w = normality_violation(f.target(), img))
        throw Error(Errc::ImageNotNormal, "conjugate of " + f.target().label(w->first) + " by "
                                              + f.target().label(w->second) + " leaves the image");
    return quotient(f.target(), img);
}

// --------------------------------------------------------------------------
// Products

/// G × H with (g,h) stored at g * |H| + h.
struct ProductGroup {
    FinGroup group;
    GroupHom proj1, proj2, incl1, incl2;
    std::size_t right_order = 1;

    Elem pair(Elem a, Elem b) const { return static_cast<Elem>(a * right_order + b); }
    Elem first(Elem p) const { return static_cast<Elem>(p / right_order); }
    Elem second(Elem p) const { return static_cast<Elem>(p % right_order); }
};

inline ProductGroup direct_product(const FinGroup& g, const FinGroup& h, const Caps& caps = {})
{
    const std::size_t n = g.order() * h.order();
    if (n > caps.product)
        throw Error(Errc::OrderCapExceeded, "product of order " + std::to_string(n) + " exceeds cap "
                                                + std::to_string(caps.product));
    const std::size_t m = h.order();
    std::vector<Elem> mul(n * n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            mul[p * n + q] = static_cast<Elem>(g.mul(p / m, q / m) * m + h.mul(p % m, q % m));
    std::vector<std::string> labels;
    for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < h.order(); ++b)
            labels.push_back("(" + g.label(a) + "," + h.label(b) + ")");
    auto gh = FinGroup::trusted(n, static_cast<Elem>(g.identity() * m + h.identity()), std::move(mul),
                                std::move(labels));
    std::vector<Elem> p1(n), p2(n), i1(g.order()), i2(h.order());
    for (std::size_t p = 0; p < n; ++p) {
        p1[p] = static_cast<Elem>(p / m);
        p2[p] = static_cast<Elem>(p % m);
    }
    for (Elem a = 0; a < g.order(); ++a)
        i1[a] = static_cast<Elem>(a * m + h.identity());
    for (Elem b = 0; b < h.order(); ++b)
        i2[b] = static_cast<Elem>(g.identity() * m + b);
    return {gh, GroupHom(gh, g, std::move(p1)), GroupHom(gh, h, std::move(p2)), GroupHom(g, gh, std::move(i1)),
            GroupHom(h, gh, std::move(i2)), m};
}

/// (x, y) -> (f(x), g(y))
inline GroupHom product_map(const ProductGroup& src, const ProductGroup& tgt, const GroupHom& f, const GroupHom& g)
{
    std::vector<Elem> m(src.group.order());
    for (Elem p = 0; p < m.size(); ++p)
        m[p] = tgt.pair(f(src.first(p)), g(src.second(p)));
    return GroupHom(src.group, tgt.group, std::move(m));
}

/// x -> (f(x), g(x))
inline GroupHom pairing_map(const ProductGroup& tgt, const GroupHom& f, const GroupHom& g)
{
    std::vector<Elem> m(f.source().order());
    for (Elem x = 0; x < m.size(); ++x)
        m[x] = tgt.pair(f(x), g(x));
    return GroupHom(f.source(), tgt.group, std::move(m));
}

/// {(a,b) : f(a) = g(b)} inside the source product, with both projections.
struct FiberProduct {
    Subgroup sub;
    ProductGroup product;
    GroupHom proj1, proj2;

    const FinGroup& group() const { return sub.group; }
    std::optional<Elem> find(Elem a, Elem b) const { return sub.find(product.pair(a, b)); }
};

inline FiberProduct fiber_product(const GroupHom& f, const GroupHom& g, const Caps& caps = {})
{
    if (!(f.target() == g.target()))
        throw Error(Errc::TargetMismatch, "fiber product of maps with different targets");
    auto prod = direct_product(f.source(), g.source(), caps);
    std::vector<Elem> elems;
    for (Elem a = 0; a < f.source().order(); ++a)
        for (Elem b = 0; b < g.source().order(); ++b)
            if (f(a) == g(b))
                elems.push_back(prod.pair(a, b));
    auto sub = subgroup(prod.group, elems);
    auto p1 = compose(prod.proj1, sub.inclusion);
    auto p2 = compose(prod.proj2, sub.inclusion);
    return {std::move(sub), std::move(prod), std::move(p1), std::move(p2)};
}

// --------------------------------------------------------------------------
// Homomorphism enumeration

/**
 * A generating set with a spanning tree: every non-identity element e is
 * parent[e] * gens[via[e]], and `bfs` lists elements parents-first.
 */
struct GeneratorTree {
    std::vector<Elem> gens;
    std::vector<Elem> parent;
    std::vector<std::size_t> via;
    std::vector<Elem> bfs;
};

/// Greedy generating set, taking `preferred` elements first when they enlarge
/// the generated subgroup.
inline GeneratorTree generator_tree(const FinGroup& g, std::span<const Elem> preferred = {})
{
    GeneratorTree t;
    std::vector<Elem> span{g.identity()};
    auto consider = [&](Elem x) {
        if (std::binary_search(span.begin(), span.end(), x))
            return;
        t.gens.push_back(x);
        span = generated(g, t.gens);
    };
    for (auto x : preferred)
        consider(x);
    for (Elem x = 0; x < g.order(); ++x)
        consider(x);
    t.parent.assign(g.order(), g.identity());
    t.via.assign(g.order(), 0);
    std::vector<bool> seen(g.order(), false);
    seen[g.identity()] = true;
    t.bfs.push_back(g.identity());
    for (std::size_t head = 0; head < t.bfs.size(); ++head)
        for (std::size_t s = 0; s < t.gens.size(); ++s) {
            auto next = g.mul(t.bfs[head], t.gens[s]);
            if (!seen[next]) {
                seen[next] = true;
                t.parent[next] = t.bfs[head];
                t.via[next] = s;
                t.bfs.push_back(next);
            }
        }
    return t;
}

/**
 * Calls `visit` for every homomorphism G -> H whose generator images pass
 * `allow(generator, image)`. Enumeration is lexicographic in the generator
 * images. `visit` returns false to stop early. The number of generator
 * assignments tried is charged to `budget`; SearchCapExceeded when spent.
 */
template <class Allow, class Visit>
void for_each_hom(const FinGroup& g, const FinGroup& h, const GeneratorTree& tree, Allow&& allow, Visit&& visit,
                  std::size_t& budget)
{
    const std::size_t k = tree.gens.size();
    std::vector<std::vector<Elem>> cands(k);
    for (std::size_t s = 0; s < k; ++s)
        for (Elem y = 0; y < h.order(); ++y)
            if (allow(tree.gens[s], y))
                cands[s].push_back(y);
    std::vector<std::size_t> pick(k, 0);
    for (const auto& c : cands)
        if (c.empty())
            return;
    std::vector<Elem> map(g.order());
    while (true) {
        if (budget == 0)
            throw Error(Errc::SearchCapExceeded, "homomorphism search budget exhausted");
        --budget;
        map[g.identity()] = h.identity();
        for (std::size_t i = 1; i < tree.bfs.size(); ++i) {
            auto e = tree.bfs[i];
            map[e] = h.mul(map[tree.parent[e]], cands[tree.via[e]][pick[tree.via[e]]]);
        }
        bool ok = true;
        for (std::size_t s = 0; s < k && ok; ++s)
            ok = map[tree.gens[s]] == cands[s][pick[s]];
        for (Elem a = 0; a < g.order() && ok; ++a)
            for (Elem b = 0; b < g.order() && ok; ++b)
                ok = map[g.mul(a, b)] == h.mul(map[a], map[b]);
        if (ok && !visit(GroupHom(g, h, map)))
            return;
        std::size_t s = k;
        while (s > 0) {
            --s;
            if (++pick[s] < cands[s].size())
                break;
            pick[s] = 0;
            if (s == 0)
                return;
        }
        if (k == 0)
            return;
    }
}

/// Every homomorphism G -> H. Throws SearchCapExceeded when
/// |H|^(#generators of G) exceeds caps.search.
inline std::vector<GroupHom> enumerate_homs(const FinGroup& g, const FinGroup& h, const Caps& caps = {})
{
    auto tree = generator_tree(g);
    double space = 1;
    for (std::size_t s = 0; s < tree.gens.size(); ++s)
        space *= static_cast<double>(h.order());
    if (space > static_cast<double>(caps.search))
        throw Error(Errc::SearchCapExceeded, "hom search space " + std::to_string(static_cast<long long>(space))
                                                 + " exceeds cap " + std::to_string(caps.search));
    std::vector<GroupHom> out;
    std::size_t budget = caps.search;
    for_each_hom(
        g, h, tree, [](Elem, Elem) { return true; },
        [&](GroupHom f) {
            out.push_back(std::move(f));
            return true;
        },
        budget);
    return out;
}

/**
 * Finds an isomorphism G -> H. Orders up to 8 are handled by trying every
 * bijection; larger groups by generator-image search. Exponential in the
 * worst case.
 */
inline std::optional<GroupHom> find_isomorphism(const FinGroup& g, const FinGroup& h, const Caps& caps = {})
{
    if (g.order() != h.order() || g.is_abelian() != h.is_abelian())
        return std::nullopt;
    if (g.order() <= 8) {
        std::vector<Elem> perm = h.elements();
        do {
            GroupHom f(g, h, perm);
            if (f.is_homomorphism())
                return f;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return std::nullopt;
    }
    auto tree = generator_tree(g);
    std::size_t budget = caps.search;
    std::optional<GroupHom> found;
    for_each_hom(
        g, h, tree, [](Elem, Elem) { return true; },
        [&](GroupHom f) {
            if (f.is_injective()) {
                found = std::move(f);
                return false;
            }
            return true;
        },
        budget);
    return found;
}

inline bool is_isomorphic(const FinGroup& g, const FinGroup& h, const Caps& caps = {})
{
    return find_isomorphism(g, h, caps).has_value();
}

} // namespace xcb

#endif
