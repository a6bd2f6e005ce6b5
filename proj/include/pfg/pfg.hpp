// Copyright 2026 The pfg Authors.
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

#ifndef PFG_PFG_HPP
#define PFG_PFG_HPP

#include "pfg/beliefs.hpp"
#include "pfg/core.hpp"
#include "pfg/errors.hpp"
#include "pfg/game.hpp"
#include "pfg/generators.hpp"
#include "pfg/io.hpp"
#include "pfg/lp.hpp"
#include "pfg/partitions.hpp"
#include "pfg/random.hpp"
#include "pfg/rational.hpp"
#include "pfg/report.hpp"
#include "pfg/verify.hpp"

#endif  // PFG_PFG_HPP
