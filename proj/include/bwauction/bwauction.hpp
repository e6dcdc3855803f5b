// Copyright 2026 The bwauction Authors
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

#ifndef BWAUCTION_BWAUCTION_HPP
#define BWAUCTION_BWAUCTION_HPP

#include "bwauction/equilibrium.hpp"
#include "bwauction/errors.hpp"
#include "bwauction/learning.hpp"
#include "bwauction/market.hpp"
#include "bwauction/properties.hpp"
#include "bwauction/radio.hpp"
#include "bwauction/rng.hpp"
#include "bwauction/scenario.hpp"

#endif  // BWAUCTION_BWAUCTION_HPP
