#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "perron/homotopy.hpp"
#include "perron/nqz.hpp"
#include "perron/tensor.hpp"

namespace perron {

enum class ExampleId { cpz, lgl, random };
enum class Method { homotopy, nqz, nqz_shift };

const char* to_string(ExampleId e);
const char* to_string(Method m);
ExampleId parse_example_id(const std::string& s);
Method parse_method(const std::string& s);

struct ExperimentSpec {
  ExampleId example = ExampleId::cpz;
  int order = 3;
  int dim = 3;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::vector<Method> methods{Method::homotopy, Method::nqz};
  SolverConfig solver;
  NqzConfig nqz;
  double nqz_shift = 1.0;  // shift used by Method::nqz_shift
  std::string label;       // free-form case name, not part of the report schema

  void validate() const;
};

/// The generator behind random examples: std::mt19937_64, doubles in [0,1)
/// from the top 53 bits.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed);
  double next();

 private:
  std::mt19937_64 engine_;
};

/// Sparse 3x3x3 test tensor: a_122=1, a_133=2, a_211=3, a_311=4.
DenseTensor cpz_tensor();
/// Dense positive 3x3x3 tensor P used for the gamma-shift grid.
DenseTensor lgl_tensor();
/// Entries i.i.d. uniform [0,1) in lexicographic order.
DenseTensor random_tensor(int order, int dim, std::uint64_t seed);

DenseTensor gen_example(const ExperimentSpec& spec);

struct ReportRow {
  std::string method;
  double lambda = 0.0;
  double residual = 0.0;
  int iters = 0;
  std::optional<int> newton_iters;  // homotopy only
  double time_ms = 0.0;
  std::string termination;  // converged | step_limit | path_failure | error
  std::vector<double> x;    // not part of the CSV schema
  std::string diagnostic;
};

ReportRow run_method(const DenseTensor& a, Method method, const ExperimentSpec& spec);

/// Runs spec.methods in order on `a` (or on gen_example(spec) when omitted).
/// Converged rows whose lambdas disagree by more than 1e-8 relative get a
/// diagnostic noting the mismatch.
std::vector<ReportRow> run_experiment(const ExperimentSpec& spec);
std::vector<ReportRow> run_experiment(const ExperimentSpec& spec, const DenseTensor& a);

/// Runs every case; cases are spread over harness_threads() workers and the
/// result order matches `specs`.
std::vector<std::vector<ReportRow>> run_suite(const std::vector<ExperimentSpec>& specs);

/// Threads for independent experiment rows, from PERRON_THREADS (default 1).
int harness_threads();

/// Seed of the random tensors in the bench suites.
inline constexpr std::uint64_t kBenchSeed = 20161106;

/// "table1": lgl tensor plus gamma I, gamma in {0, 1e1, 1e2, 1e3, 1e4}.
/// "table2-small": random (3,20) and (4,10) over gamma in {1e2, 1e4, 1e6};
/// `full` appends the large (3,100), (3,200), (4,50) and (4,100) cases.
std::vector<ExperimentSpec> bench_suite(const std::string& name, bool full = false);

}  // namespace perron
