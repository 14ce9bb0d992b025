#ifndef FIBRK_IO_HPP
#define FIBRK_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fibrk/degenerations.hpp"

namespace fibrk {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;  // deterministic field order in output

struct Diagnostic {
    std::string pointer;  // JSON pointer to the offending field
    std::string message;
};

// Bertini-genericity facts supplied alongside a datum: levels whose cut
// configurations are declared trivial, and the Fano-identity route for one
// remaining level.
struct AnalysisHints {
    std::vector<int> levels_zero;
    std::optional<int> fano_k;
    std::optional<Rational> fano_lambda;
    bool lower_cuts_trivial = false;

    bool empty() const { return levels_zero.empty() && !fano_k; }
};

struct DatumFile {
    TestConfigDatum datum;
    AnalysisHints analysis;
};

// Schema diagnostics for a datum document; empty iff loadable.
std::vector<Diagnostic> validate_datum(const Json& doc);
// Throws SchemaError (first diagnostic) on invalid input.
DatumFile load_datum(const Json& doc);

bool is_catalog(const Json& doc);
bool is_scalar_components(const Json& doc);

struct CatalogEntry {
    NormalConeDatum datum;
    std::optional<int> level;         // caller-supplied first nontrivial level
    std::optional<Rational> lambda;   // relative-Fano constant
};

std::vector<Diagnostic> validate_catalog(const Json& doc);
std::vector<CatalogEntry> load_catalog(const Json& doc, int default_truncation);
std::vector<ComponentScalarData> load_scalar_components(const Json& doc);

// "name>0" / "name<0" parameter sign declarations.
SignHypotheses parse_sign_flags(const std::vector<std::string>& flags);

// --- serialization (exact strings; approx adds decimal renderings) ---

OJson poly_json(const Poly& p);
OJson rationalfn_json(const RationalFn& fn);
OJson verdict_json(const StabilityVerdict& v);
OJson report_json(const FunctionalReport& report, bool has_mabuchi, bool approx);
OJson wtable_json(const WDecomposition& dec, const StabilityVerdict& v,
                  const std::vector<std::string>& notes, bool approx);

std::string report_text(const FunctionalReport& report, bool has_mabuchi, bool approx);
std::string wtable_text(const WDecomposition& dec, const StabilityVerdict& v,
                        const std::vector<std::string>& notes, bool approx);
std::string diagnostics_text(const std::vector<Diagnostic>& diags);

// --- pipeline runners shared by the CLI and the bundled examples ---

struct WtableResult {
    WDecomposition dec;
    StabilityVerdict verdict;
    std::vector<std::string> notes;
    bool has_mabuchi = false;
};

// Full decomposition when the datum carries the canonical data; otherwise
// assembles the W table from analysis hints (declared-zero levels plus the
// Fano-identity level). Error(PreconditionUnverifiable) when neither covers
// every level.
WtableResult wtable_for(const DatumFile& file, const SignHypotheses& signs);

OJson run_functionals(const DatumFile& file, bool check, bool approx);
OJson run_wtable(const DatumFile& file, const SignHypotheses& signs, bool approx);
OJson run_catalog(const std::vector<CatalogEntry>& entries, std::optional<int> level_override,
                  std::optional<Rational> lambda_override, bool approx);
OJson run_scalar_components(const std::vector<ComponentScalarData>& components);

std::string catalog_text(const OJson& report);
std::string scalar_text(const OJson& report);

}  // namespace fibrk

#endif
