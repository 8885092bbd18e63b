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

#pragma once

#include "blocks.hpp"
#include "circuit.hpp"
#include "dense.hpp"
#include "errors.hpp"
#include "gates.hpp"
#include "inversion.hpp"
#include "layout.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"
#include "reciprocal.hpp"
#include "rng.hpp"
#include "statevector.hpp"
