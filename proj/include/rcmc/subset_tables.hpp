#pragma once

#include <cstdint>
#include <vector>

#include "rcmc/exec.hpp"
#include "rcmc/graph.hpp"
#include "rcmc/guards.hpp"

namespace rcmc {

// Precomputed combinatorial data for every edge subset of a small graph,
// indexed by bitmask.  Everything downstream (measures, transition matrices,
// congestion scans) reads these tables instead of recomputing per state.
//
// Both build kernels produce bit-identical tables: the serial one fills
// odd-vertex masks by a subset DP, the parallel one recomputes each mask
// independently so the rows can be split across threads.
class SubsetTables {
public:
    explicit SubsetTables(const Graph& g, Exec exec = Exec::serial, int guard_m = kEnumGuardM);

    const Graph& graph() const { return *g_; }
    uint64_t size() const { return uint64_t{1} << g_->edge_count(); }

    int kappa(uint64_t mask) const { return kappa_[mask]; }          // components, isolated vertices included
    uint32_t odd_mask(uint64_t mask) const { return odd_mask_[mask]; } // bit v set iff deg_v odd
    int odd_count(uint64_t mask) const { return odd_count_[mask]; }
    int pair_count(uint64_t mask) const { return pair_count_[mask]; } // sum over components of C(size, 2)

    bool is_even(uint64_t mask) const { return odd_count_[mask] == 0; }
    bool is_two_defect(uint64_t mask) const { return odd_count_[mask] == 2; }
    bool is_worm_state(uint64_t mask) const { return odd_count_[mask] <= 2; } // odd count is always even

private:
    void fill_odd_serial(const std::vector<uint32_t>& par);
    void fill_odd_parallel(const std::vector<uint32_t>& par);
    void fill_components(Exec exec);

    const Graph* g_;
    std::vector<uint8_t> kappa_;
    std::vector<uint32_t> odd_mask_;
    std::vector<uint8_t> odd_count_;
    std::vector<uint16_t> pair_count_;
};

} // namespace rcmc
