// Copyright 2026 The Faultline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "faultline/blossom.hpp"
#include "faultline/bounds.hpp"
#include "faultline/chain.hpp"
#include "faultline/code_lattice.hpp"
#include "faultline/decoder.hpp"
#include "faultline/enumeration.hpp"
#include "faultline/errors.hpp"
#include "faultline/matcher.hpp"
#include "faultline/montecarlo.hpp"
#include "faultline/rng.hpp"
#include "faultline/stats.hpp"
#include "faultline/syndrome_graph.hpp"
#include "faultline/witness.hpp"
