/**
 * Shared vocabulary for the xcb library: error codes, the cap configuration
 * record, and validation reports.
 */
#ifndef XCB_CORE_HPP
#define XCB_CORE_HPP

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xcb {

enum class Errc {
    InvalidTable,
    NotAssociative,
    NoIdentity,
    NoInverse,
    NotAPermutation,
    ClosureBoundExceeded,
    OrderCapExceeded,
    NotASubgroup,
    NotNormal,
    ImageNotNormal,
    TargetMismatch,
    SearchCapExceeded,
    NotAHomomorphism,
    DegreeMismatch,
    DegreeOutOfRange,
    InducedMapIllDefined,
    QuotientIllDefined,
    NNotNormal,
    PreconditionFailed,
    FoldInvalid,
    NotChainable,
    NotAHomotopy,
    IdentityViolated,
    IllDefinedOnCosets,
    ParseError,
    UnresolvedReference,
    ValidationFailed,
};

inline const char* errc_name(Errc c)
{
    switch (c) {
    case Errc::InvalidTable: return "InvalidTable";
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::NoInverse: return "NoInverse";
    case Errc::NotAPermutation: return "NotAPermutation";
    case Errc::ClosureBoundExceeded: return "ClosureBoundExceeded";
    case Errc::OrderCapExceeded: return "OrderCapExceeded";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::NotNormal: return "NotNormal";
    case Errc::ImageNotNormal: return "ImageNotNormal";
    case Errc::TargetMismatch: return "TargetMismatch";
    case Errc::SearchCapExceeded: return "SearchCapExceeded";
    case Errc::NotAHomomorphism: return "NotAHomomorphism";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::InducedMapIllDefined: return "InducedMapIllDefined";
    case Errc::QuotientIllDefined: return "QuotientIllDefined";
    case Errc::NNotNormal: return "NNotNormal";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::FoldInvalid: return "FoldInvalid";
    case Errc::NotChainable: return "NotChainable";
    case Errc::NotAHomotopy: return "NotAHomotopy";
    case Errc::IdentityViolated: return "IdentityViolated";
    case Errc::IllDefinedOnCosets: return "IllDefinedOnCosets";
    case Errc::ParseError: return "ParseError";
    case Errc::UnresolvedReference: return "UnresolvedReference";
    case Errc::ValidationFailed: return "ValidationFailed";
    }
    return "Unknown";
}

/// Every failure raised by the library. The code identifies the failure class;
/// the message carries the witness.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/**
 * Size limits for every exhaustive construction and search.
 *
 *   order    largest group accepted from an explicit table
 *   closure  largest group produced by permutation closure
 *   product  largest (pre-quotient) product group built internally
 *   search   node budget for hom / morphism / homotopy searches
 */
struct Caps {
    std::size_t order = 64;
    std::size_t closure = 10000;
    std::size_t product = 4096;
    std::size_t search = 1000000;

    /// Parses "order=64,search=1000000" style overrides on top of *this.
    Caps with_overrides(std::string_view text) const
    {
        Caps out = *this;
        while (!text.empty()) {
            auto comma = text.find(',');
            auto item = text.substr(0, comma);
            text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
            if (item.empty())
                continue;
            auto eq = item.find('=');
            if (eq == std::string_view::npos)
                throw Error(Errc::ParseError, "cap entry without '=': " + std::string(item));
            auto key = item.substr(0, eq);
            auto val = item.substr(eq + 1);
            std::size_t n = 0;
            auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), n);
            if (ec != std::errc{} || ptr != val.data() + val.size())
                throw Error(Errc::ParseError, "cap value is not a number: " + std::string(item));
            if (key == "order")
                out.order = n;
            else if (key == "closure")
                out.closure = n;
            else if (key == "product")
                out.product = n;
            else if (key == "search")
                out.search = n;
            else
                throw Error(Errc::ParseError, "unknown cap: " + std::string(key));
        }
        return out;
    }

    /// Defaults overridden by the XCB_CAPS environment variable, if set.
    static Caps from_env()
    {
        const char* env = std::getenv("XCB_CAPS");
        return env ? Caps{}.with_overrides(env) : Caps{};
    }
};

/// One failed check: which property, and the witness that refutes it.
struct Finding {
    std::string check;
    std::string witness;
};

/**
 * Outcome of a validation pass. Checks that ran are recorded in `checked`;
 * failures carry a witness. A check name starts with its axiom or property
 * id (e.g. "B2 exactness"), so failures can be grouped by the first token.
 */
class Report {
public:
    void pass(std::string check) { checked_.push_back(std::move(check)); }

    void fail(std::string check, std::string witness)
    {
        checked_.push_back(check);
        failures_.push_back({std::move(check), std::move(witness)});
    }

    void expect(bool cond, std::string check, std::string witness)
    {
        if (cond)
            pass(std::move(check));
        else
            fail(std::move(check), std::move(witness));
    }

    bool ok() const noexcept { return failures_.empty(); }
    const std::vector<Finding>& failures() const noexcept { return failures_; }
    const std::vector<std::string>& checked() const noexcept { return checked_; }

    /// True if any failure's check name starts with `id` as a whole token.
    bool failed(std::string_view id) const
    {
        for (const auto& f : failures_)
            if (f.check.size() >= id.size() && std::string_view(f.check).substr(0, id.size()) == id
                && (f.check.size() == id.size() || f.check[id.size()] == ' '))
                return true;
        return false;
    }

    /// Distinct leading tokens of failed checks, in first-seen order.
    std::vector<std::string> failed_ids() const
    {
        std::vector<std::string> ids;
        for (const auto& f : failures_) {
            auto id = f.check.substr(0, f.check.find(' '));
            bool seen = false;
            for (const auto& s : ids)
                seen = seen || s == id;
            if (!seen)
                ids.push_back(id);
        }
        return ids;
    }

    void merge(const Report& other, const std::string& prefix = {})
    {
        for (const auto& c : other.checked_)
            checked_.push_back(prefix + c);
        for (const auto& f : other.failures_)
            failures_.push_back({prefix + f.check, f.witness});
    }

    std::string str() const
    {
        std::string out;
        for (const auto& f : failures_)
            out += f.check + ": " + f.witness + "\n";
        return out;
    }

private:
    std::vector<std::string> checked_;
    std::vector<Finding> failures_;
};

} // namespace xcb

#endif
