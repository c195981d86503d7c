/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_GENERATE_HH
#define TREEPACK_GENERATE_HH 1

#include <treepack/graph.hh>

#include <cstdint>

namespace treepack
{
    /// G(n, p): pairs in canonical order, each kept with probability p.
    auto gen_gnp(int n, double p, std::uint64_t seed) -> SimpleGraph;

    /// Random d-regular simple graph from the configuration model. Stubs are
    /// paired one at a time; a pairing that would create a loop or a repeated
    /// edge is redrawn, and a stuck sample is discarded. Throws
    /// PreconditionError if n d is odd or d >= n, InvariantViolation if
    /// max_samples samples all get stuck.
    auto gen_regular(int n, int d, std::uint64_t seed, int max_samples = 1000) -> SimpleGraph;
}

#endif
