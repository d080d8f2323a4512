//
// Copyright 2026 The LDPHS Authors
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
//

#ifndef LDPHS_LDPHS_H_
#define LDPHS_LDPHS_H_

#include "ldphs/barriers.h"
#include "ldphs/dist_core.h"
#include "ldphs/errors.h"
#include "ldphs/experiment.h"
#include "ldphs/io.h"
#include "ldphs/ldp_protocol.h"
#include "ldphs/random.h"
#include "ldphs/rmde.h"
#include "ldphs/scheffe_graph.h"

#endif  // LDPHS_LDPHS_H_
