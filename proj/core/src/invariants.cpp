// Copyright 2026 The cwpotts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cwpotts/invariants.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <sstream>

#include "cwpotts/exact_dist.hpp"
#include "cwpotts/free_energy.hpp"
#include "cwpotts/limit_laws.hpp"
#include "cwpotts/minimizers.hpp"
#include "cwpotts/numeric.hpp"
#include "cwpotts/rc_graph.hpp"
#include "cwpotts/structured_matrix.hpp"

namespace cwpotts {
namespace {

class Suite {
 public:
  explicit Suite(std::vector<CheckResult>& out) : out_(out) {}

  // `check` returns an empty string on success, a description otherwise.
  void run(const std::string& suite, const std::string& name,
           const std::function<std::string()>& check) {
    CheckResult r{suite, name, false, ""};
    try {
      r.detail = check();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out_.push_back(std::move(r));
  }

 private:
  std::vector<CheckResult>& out_;
};

std::string expect_close(double got, double want, double tol,
                         const char* what) {
  if (std::abs(got - want) <= tol) return "";
  std::ostringstream s;
  s.precision(17);
  s << what << ": got " << got << ", want " << want << " (tol " << tol << ")";
  return s.str();
}

}  // namespace

std::vector<CheckResult> run_invariant_suite() {
  std::vector<CheckResult> out;
  Suite suite(out);

  suite.run("potts-core", "even plus odd equals value", [] {
    const ModelParams p = ModelParams::make(4, 2.3, 0.4);
    for (double z : {-0.7, -0.1, 0.0, 0.35, 0.9}) {
      const ZFreeEnergy fz = free_energy_z(p, z);
      auto msg = expect_close(fz.even + fz.odd, fz.value, 1e-12, "split");
      if (!msg.empty()) return msg;
    }
    return std::string();
  });

  suite.run("potts-core", "stationarity at minimizers", [] {
    const ModelParams p = ModelParams::make(3, 1.7, 0.3);
    for (const auto& x : find_global_minimizers(p).minimizers) {
      auto msg = expect_close(stationarity_residual(p, x), 0.0, 1e-9,
                              "residual");
      if (!msg.empty()) return msg;
    }
    return std::string();
  });

  suite.run("phase-structure", "critical line pair", [] {
    const CriticalPoint cp = critical_point_from_z(3, 0.2);
    const MinimizerSet set = find_global_minimizers(cp.params(3));
    if (set.minimizers.size() != 2) return std::string("expected 2 states");
    return expect_close(set.z_values[0], 0.2, 1e-8, "z");
  });

  suite.run("phase-structure", "q+1 states at beta_c", [] {
    const double bc = phase_boundaries(3).beta_c;
    const MinimizerSet set = find_global_minimizers(ModelParams::make(3, bc, 0));
    if (set.minimizers.size() != 4) return std::string("expected 4 states");
    return std::string();
  });

  suite.run("exact-dist", "lattice sum equals brute force", [] {
    const ModelParams p = ModelParams::make(3, 1.3, 0.4);
    const double exact = exact_distribution(p, 6).log_z();
    return expect_close(exact, brute_force_log_Z(p, 6),
                        1e-10 * std::abs(exact), "log Z");
  });

  suite.run("exact-dist", "probabilities sum to one", [] {
    const ExactDistribution d =
        exact_distribution(ModelParams::make(3, 2.0, 0.1), 60);
    const auto probs = d.probabilities();
    return expect_close(pairwise_sum(probs), 1.0, 1e-12, "total mass");
  });

  suite.run("limit-laws", "structured inverse identity", [] {
    const StructuredMatrix m{0.7, -1.9, 5};
    const Eigen::MatrixXd prod = m.dense() * structured_inverse(m).dense();
    return expect_close(
        (prod - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 0.0,
        1e-10, "M M^-1 - I");
  });

  suite.run("limit-laws", "covariance forms agree", [] {
    const double beta = 1.0;
    const MinimizerSet set =
        find_global_minimizers(ModelParams::make(3, beta, 0.2));
    const DensityVector& x = set.minimizers[0];
    const CovarianceMatrix k = covariance_matrix(x, beta);
    const double sym =
        (k.entries - covariance_symmetric_form(x, beta)).cwiseAbs().maxCoeff();
    const double first = (k.entries - covariance_first_coordinate_form(x, beta))
                             .cwiseAbs()
                             .maxCoeff();
    const double rows = k.entries.rowwise().sum().cwiseAbs().maxCoeff();
    auto msg = expect_close(sym, 0.0, 1e-12, "symmetric form");
    if (msg.empty()) msg = expect_close(first, 0.0, 1e-12, "first form");
    if (msg.empty()) msg = expect_close(rows, 0.0, 1e-9, "row sums");
    if (msg.empty() && numerical_rank(k.entries) != 2) msg = "rank";
    return msg;
  });

  suite.run("limit-laws", "quartic density normalized", [] {
    const QuarticLaw law(3);
    return expect_close(law.cdf(law.support_radius()) -
                            law.cdf(-law.support_radius()),
                        1.0, 1e-8, "mass");
  });

  suite.run("limit-laws", "tricritical V covariance rank", [] {
    const CovarianceMatrix v = tricritical_V_covariance(4);
    if (numerical_rank(v.entries) != 2) return std::string("rank");
    return expect_close(v.entries(1, 1), 4.0 / (2.0 * 9.0 * 2.0) * 2.0, 1e-12,
                        "V_2 variance");
  });

  suite.run("rc-graph", "q = 1 partition function", [] {
    for (std::int64_t n : {1, 7, 50}) {
      auto msg = expect_close(zrc_exact(0.3, 1, n), 0.0, 1e-9, "log Z^RC");
      if (!msg.empty()) return msg;
    }
    return std::string();
  });

  suite.run("rc-graph", "beta and p are inverse", [] {
    return expect_close(p_of_beta(beta_of_p(0.37, 11), 11), 0.37, 1e-14, "p");
  });

  suite.run("rc-graph", "percolation is deterministic", [] {
    const CountVector counts({40, 30, 30});
    auto draw = [&] {
      Rng rng = make_stream(9, 3);
      const Coloring c = assemble_coloring(counts, rng);
      ComponentForest f = fk_percolate(c, 0.05, rng);
      return std::make_pair(c.colors, f.component_sizes());
    };
    const auto a = draw();
    const auto b = draw();
    if (a != b) return std::string("runs differ");
    std::int64_t total = 0;
    for (auto s : a.second) total += s;
    if (total != 100) return std::string("component sizes do not sum to n");
    return std::string();
  });

  return out;
}

}  // namespace cwpotts
