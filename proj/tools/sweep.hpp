#pragma once

#include <iosfwd>

#include "config.hpp"

namespace radialnet::cli {

// Cartesian product of the comma lists under target, d, epsilon and
// (optionally) width; every other key is passed to each cell's build. Cell i
// runs with seed derive_seed(seed, i). Finished cells are appended to the
// ledger (one JSON object per line) and skipped on a rerun; the CSV is
// written, sorted by cell, only once every cell is done.
//   threads      worker count (default: hardware)
//   out          CSV path (default sweep.csv)
//   ledger       default <out>.ledger
//   stop_after   finish at most this many new cells, then return
int cmd_sweep(const JobConfig& cfg, std::ostream& out);

}  // namespace radialnet::cli
