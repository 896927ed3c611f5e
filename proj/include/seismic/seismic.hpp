// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "seismic/approx_knn_graph.hpp"
#include "seismic/bench.hpp"
#include "seismic/csr_io.hpp"
#include "seismic/eval.hpp"
#include "seismic/index.hpp"
#include "seismic/index_io.hpp"
#include "seismic/knn_graph.hpp"
#include "seismic/quantize.hpp"
#include "seismic/search.hpp"
#include "seismic/sketch.hpp"
#include "seismic/sparse_vector.hpp"
#include "seismic/stats.hpp"
#include "seismic/topk.hpp"
