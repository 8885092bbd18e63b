// Copyright 2026 The qpoisson Authors
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

// Solves the 1d problem M = 4, b = (1, 0, 0) and prints the register-C
// amplitudes next to the classical solution (3, 2, 1) / sqrt(14).

#include <cstdio>

#include "qpoisson/qpoisson.hpp"

int main() {
    qpoisson::PoissonProblem problem;
    problem.grid = 4;
    problem.dimension = 1;
    problem.rhs = {1.0, 0.0, 0.0};
    problem.alpha = qpoisson::default_alpha(4, 1);

    for (auto mode : {qpoisson::PipelineMode::Full, qpoisson::PipelineMode::IdealInversion}) {
        const auto report = qpoisson::run_pipeline(problem, mode);
        std::printf("%s mode, %zu qubits, alpha = %.4f\n", qpoisson::to_string(mode).c_str(),
                    report.total_qubits, report.problem.alpha);
        for (std::size_t i = 0; i < report.solution.size(); ++i) {
            std::printf("  u[%zu] = %+.6f   classical %+.6f\n", i + 1, report.solution[i], report.reference[i]);
        }
        std::printf("  linf error %.4f, success probability %.5f\n\n", report.linf_error,
                    report.success_probability);
    }
    return 0;
}
