// Copyright 2026 The gencache Authors
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

#ifndef GENCACHE_GENCACHE_HPP_
#define GENCACHE_GENCACHE_HPP_

#include "gencache/core.hpp"
#include "gencache/errors.hpp"
#include "gencache/graph.hpp"
#include "gencache/harness.hpp"
#include "gencache/io.hpp"
#include "gencache/properties.hpp"
#include "gencache/reductions.hpp"
#include "gencache/solver.hpp"

#endif  // GENCACHE_GENCACHE_HPP_
