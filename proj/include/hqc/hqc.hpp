// Copyright 2026 The hqc Authors
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

#include "hqc/berry.hpp"
#include "hqc/config.hpp"
#include "hqc/errors.hpp"
#include "hqc/evolution.hpp"
#include "hqc/gates.hpp"
#include "hqc/holonomy.hpp"
#include "hqc/lemma.hpp"
#include "hqc/operator.hpp"
#include "hqc/path.hpp"
#include "hqc/protocols.hpp"
#include "hqc/sweep.hpp"
#include "hqc/theorem1.hpp"
#include "hqc/tracking.hpp"
