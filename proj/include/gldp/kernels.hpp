#pragma once

#include <cstdint>
#include <vector>

#include "gldp/block_graphon.hpp"
#include "gldp/reference.hpp"

namespace gldp::kernels {

// Each kernel comes as a serial reference implementation and an OpenMP
// version.  Work is decomposed into fixed chunks/slots independent of the
// thread count and reduced in slot order, so both versions (and any thread
// count) produce bitwise identical results.  The *_omp versions honour
// par::threads(); the undecorated name dispatches.

// Exact rectangle scan behind the cut distance.  cell_mass holds the n x n
// signed cell masses (difference divided by n^2); returns the max over
// rectangles S x T of |sum|.  Subsets S are enumerated Gray-code style with
// the top bits fixed per chunk.
double cut_scan_serial(const std::vector<double>& cell_mass, int n);
double cut_scan_omp(const std::vector<double>& cell_mass, int n);
double cut_scan(const std::vector<double>& cell_mass, int n);

// Alternating-maximization heuristic for the same quantity when exhaustive
// enumeration is off the table.  Lower bound; seeded restarts.
double cut_heuristic_serial(const std::vector<double>& cell_mass, int n,
                            int restarts, std::uint64_t seed);
double cut_heuristic_omp(const std::vector<double>& cell_mass, int n,
                         int restarts, std::uint64_t seed);
double cut_heuristic(const std::vector<double>& cell_mass, int n,
                     int restarts, std::uint64_t seed);

// Bernoulli adjacency fill: entry (i,j), i<j, is 1 when the edge draw keyed
// on {i,j} falls below prob[i*n+j]; symmetric, zero diagonal.
void adjacency_fill_serial(const std::vector<double>& prob, int n,
                           std::uint64_t seed, std::vector<std::uint8_t>& adj);
void adjacency_fill_omp(const std::vector<double>& prob, int n,
                        std::uint64_t seed, std::vector<std::uint8_t>& adj);
void adjacency_fill(const std::vector<double>& prob, int n, std::uint64_t seed,
                    std::vector<std::uint8_t>& adj);

// Row rate J_r(x, beta) evaluated on a grid of x values (tilt solve per
// point).  Requires beta in (0,1) and an interior reference.
std::vector<double> jrate_scan_serial(const ReferenceGraphon& r, double beta,
                                      const std::vector<double>& xs);
std::vector<double> jrate_scan_omp(const ReferenceGraphon& r, double beta,
                                   const std::vector<double>& xs);
std::vector<double> jrate_scan(const ReferenceGraphon& r, double beta,
                               const std::vector<double>& xs);

// Tilted degree draws: sample s gets degree sum_j Bernoulli(q[j]) with draws
// keyed on (sample substream, j).  Pass q[vertex] = 0 to exclude a vertex.
void tilted_degrees_serial(const std::vector<double>& q, long samples,
                           std::uint64_t seed, std::vector<int>& degrees);
void tilted_degrees_omp(const std::vector<double>& q, long samples,
                        std::uint64_t seed, std::vector<int>& degrees);
void tilted_degrees(const std::vector<double>& q, long samples,
                    std::uint64_t seed, std::vector<int>& degrees);

}  // namespace gldp::kernels
