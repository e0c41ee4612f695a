#ifndef MODINV_CLI_HPP
#define MODINV_CLI_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "modinv/cohomology.hpp"

namespace modinv::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.3.0";
inline constexpr const char* kMonomialOrder = "grlex";

enum ExitCode : int { kPass = 0, kExhausted = 1, kInputError = 2, kAuditFailure = 3 };

struct ProblemSpec {
  unsigned p = 0, r = 1;
  std::vector<unsigned> modulus;
  std::size_t d = 0;
  std::vector<Matrix> generators;
  std::vector<std::string> hsop;  // polynomial text, may be empty
  std::size_t group_cap = MatrixGroup::kDefaultCap;
  std::size_t bar_budget = kBarBudget;
  Json echo;  // normalized input, embedded in every report
};

// Parses and validates a problem. Diagnostics name the offending field.
ProblemSpec parse_problem(const Json& j);
ProblemSpec load_problem(const std::string& path);
MatrixGroup build_group(const ProblemSpec& spec);

// hsop polynomials: from an explicit list, else the problem's own list,
// else the Dickson family.
std::vector<Polynomial> resolve_hsop(const ProblemSpec& spec, const MatrixGroup& g,
                                     const std::vector<std::string>& texts);
// Reads ["f1", ...] or {"hsop": [...]}.
std::vector<std::string> load_hsop_file(const std::string& path);

struct Options {
  bool with_witnesses = false;
  bool timings = false;
  bool allow_slow = false;
};

// Outcome of one command: the report and the process exit code.
struct Outcome {
  Json report;
  int exit_code = kPass;
};

Outcome cmd_invariants(const ProblemSpec& spec, unsigned max_degree, const Options& opt);
Outcome cmd_dickson(const ProblemSpec& spec, const Options& opt);
Outcome cmd_steenrod(const ProblemSpec& spec, const std::string& poly, const Options& opt);
Outcome cmd_cohomology(const ProblemSpec& spec, unsigned i, unsigned max_degree, const Options& opt);
Outcome cmd_verify_main(const ProblemSpec& spec, unsigned i, unsigned window, unsigned max_power,
                        const Options& opt);

struct LocArgs {
  unsigned j = 0;
  std::vector<std::string> hsop;
  unsigned window = 0;
  unsigned max_power = 4;
  std::optional<std::string> ledger_out;  // merged into if it exists
};
Outcome cmd_verify_loc(const ProblemSpec& spec, const LocArgs& args, const Options& opt);

// Ledger file: {"schema_version", "d", "p", "r", "a": [a_0 | null, ...]}.
std::vector<std::optional<unsigned>> load_ledger(const std::string& path, const ProblemSpec& spec);
void store_ledger(const std::string& path, const ProblemSpec& spec, unsigned j, unsigned a);

Outcome cmd_verify_corollaries(const ProblemSpec& spec, const std::vector<std::string>& hsop,
                               const std::vector<std::optional<unsigned>>& ledger, unsigned window,
                               const Options& opt);

// Full command line (argv without the program name); writes the report to
// `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::string& out, std::string& err);

}  // namespace modinv::cli

#endif  // MODINV_CLI_HPP
