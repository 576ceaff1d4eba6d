// Copyright 2026 The beamq Authors
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

#pragma once

// Reduced solver effort for tests on small machines.

#include "beamq/pipeline.hpp"

namespace testcfg {

/// Close to the shipped defaults but roughly an order of magnitude cheaper.
inline beamq::RunConfig light(int n_antennas = 32) {
  beamq::RunConfig c;
  c.n_antennas = n_antennas;
  c.phase_solver.batch_size = 32;
  c.phase_solver.iterations = 500;
  c.amp_solver.batch_size = 8;
  c.amp_solver.iterations = 300;
  c.cluster_m = 4;
  c.amp_adam.iterations = 100;
  c.adam.iterations = 300;
  c.classical_restarts = 2;
  return c;
}

/// Smallest useful run, for unit tests.
inline beamq::RunConfig tiny() {
  beamq::RunConfig c = light(12);
  c.phase_solver.batch_size = 8;
  c.phase_solver.iterations = 200;
  c.amp_solver.batch_size = 4;
  c.amp_solver.iterations = 100;
  c.cluster_m = 2;
  c.amp_top = 1;
  c.amp_adam.iterations = 30;
  c.adam.iterations = 60;
  c.classical_restarts = 1;
  c.score_step = 0.1;
  return c;
}

}  // namespace testcfg
