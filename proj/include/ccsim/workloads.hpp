#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccsim/errors.hpp"
#include "ccsim/types.hpp"

namespace ccsim::workload {

struct EdgeRecord {
  VertexId src = 0;
  VertexId dst = 0;
  float weight = 1.0f;

  bool operator==(const EdgeRecord&) const = default;
};

// An ordered sequence of edge batches; batch k is inserted only after
// batch k-1 has fully settled.
struct IncrementSchedule {
  std::vector<std::vector<EdgeRecord>> increments;
  uint64_t vertex_count_hint = 0;  // max endpoint id + 1

  uint64_t total_edges() const;
  // Batches 1..k concatenated in order (k = increments.size() when omitted).
  std::vector<EdgeRecord> accumulated(size_t k) const;
};

struct LoadOptions {
  uint32_t id_base = 0;     // ids in the files are 0- or 1-based; no guessing
  bool undirected = false;  // emit the reverse of every record at load
};

// One TSV edge list: `src<TAB>dst[<TAB>weight]`, '#' comments, blank lines
// skipped. A file with no lines at all is an error.
std::vector<EdgeRecord> load_edge_list(const std::string& path,
                                       const LoadOptions& opt);

// One batch per file, in the given order.
IncrementSchedule load_increments(const std::vector<std::string>& paths,
                                  const LoadOptions& opt);

// Single edge file split by an index file carrying one batch size per
// line; the sizes must sum to the edge count.
IncrementSchedule load_increments_indexed(const std::string& edges_path,
                                          const std::string& index_path,
                                          const LoadOptions& opt);

enum class SamplerKind : uint8_t { Edge = 0, Snowball = 1 };

SamplerKind sampler_kind_from_string(const std::string& s);
const char* to_string(SamplerKind k);

struct SamplerConfig {
  SamplerKind kind = SamplerKind::Edge;
  std::vector<EdgeRecord> base_graph;
  uint32_t increments = 10;
  uint64_t seed = 0;
  VertexId snowball_start = 0;
};

// Seeded uniform shuffle of the base edges, split into near-equal batches:
// insertion order as if edges were observed in the wild.
IncrementSchedule gen_edge_sampled(const SamplerConfig& cfg);

// Seeded breadth-first discovery from the start vertex; a record is
// emitted the moment its second endpoint joins the discovered region, so
// later batches carry more back-edges and batch sizes climb. Records whose
// component never meets the start vertex are appended to the final batch.
IncrementSchedule gen_snowball(const SamplerConfig& cfg);

struct IncrementStats {
  uint64_t edges = 0;
  uint64_t cumulative_edges = 0;
  uint64_t distinct_vertices = 0;  // distinct endpoints within the batch
};

std::vector<IncrementStats> schedule_stats(const IncrementSchedule& schedule);

inline constexpr const char* kStatsCsvHeader =
    "increment,edges,cumulative_edges,distinct_vertices";

void write_stats_csv(const std::vector<IncrementStats>& stats,
                     const std::string& path);

// Writes one TSV per batch as <dir>/<stem>_NN.tsv (NN is 1-based, zero
// padded) with a comment header line, so empty batches stay loadable.
// Returns the file paths in order.
std::vector<std::string> write_increment_files(
    const IncrementSchedule& schedule, const std::string& dir,
    const std::string& stem);

// The reverse of every record, interleaved after it.
std::vector<EdgeRecord> symmetrize(const std::vector<EdgeRecord>& edges);

}  // namespace ccsim::workload
