// SPDX-License-Identifier: Apache-2.0
//
// jmimo: ergodic capacity of Jacobi MIMO channels
// Copyright (C) 2026 The jmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef JMIMO_JMIMO_HPP
#define JMIMO_JMIMO_HPP

#include "jmimo/special.hpp"
#include "jmimo/jacobi_poly.hpp"
#include "jmimo/tridiagonal.hpp"
#include "jmimo/quadrature.hpp"
#include "jmimo/capacity.hpp"
#include "jmimo/rng.hpp"
#include "jmimo/haar_mc.hpp"
#include "jmimo/commands.hpp"

#endif
