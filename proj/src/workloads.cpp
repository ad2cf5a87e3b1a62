#include "ccsim/workloads.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ccsim::workload {

namespace {

// Draw from [0, n) with the raw engine; modulo bias is immaterial for
// workload shuffling and keeps the sequence identical everywhere.
uint64_t bounded(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

template <typename T>
void shuffle_seeded(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[bounded(rng, i)]);
  }
}

// Near-equal partition of n items into k parts: the first n%k parts get
// one extra.
std::vector<uint64_t> split_sizes(uint64_t n, uint32_t k) {
  std::vector<uint64_t> sizes(k, n / k);
  for (uint64_t i = 0; i < n % k; ++i) ++sizes[i];
  return sizes;
}

uint64_t parse_u64(std::string_view field, const std::string& file,
                   uint64_t line_no, const char* what) {
  uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(file, line_no,
                     std::string(what) + " is not a valid id: '" +
                         std::string(field) + "'");
  }
  return value;
}

float parse_weight(std::string_view field, const std::string& file,
                   uint64_t line_no) {
  float value = 0.0f;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(file, line_no,
                     "weight is not a number: '" + std::string(field) + "'");
  }
  return value;
}

void append_parsed_line(std::vector<EdgeRecord>& out, std::string_view line,
                        const std::string& file, uint64_t line_no,
                        const LoadOptions& opt) {
  std::vector<std::string_view> fields;
  size_t pos = 0;
  while (true) {
    const size_t tab = line.find('\t', pos);
    fields.push_back(line.substr(pos, tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  if (fields.size() < 2 || fields.size() > 3) {
    throw ParseError(file, line_no,
                     "expected src<TAB>dst[<TAB>weight], got " +
                         std::to_string(fields.size()) + " field(s)");
  }
  EdgeRecord rec;
  rec.src = parse_u64(fields[0], file, line_no, "src");
  rec.dst = parse_u64(fields[1], file, line_no, "dst");
  if (fields.size() == 3) rec.weight = parse_weight(fields[2], file, line_no);
  if (opt.id_base == 1) {
    if (rec.src == 0 || rec.dst == 0) {
      throw ParseError(file, line_no, "id 0 in a 1-based file");
    }
    --rec.src;
    --rec.dst;
  }
  out.push_back(rec);
  if (opt.undirected && rec.src != rec.dst) {
    out.push_back(EdgeRecord{rec.dst, rec.src, rec.weight});
  }
}

void validate_options(const LoadOptions& opt) {
  if (opt.id_base > 1) {
    throw ConfigError("id base must be 0 or 1, got " +
                      std::to_string(opt.id_base));
  }
}

uint64_t hint_from(const std::vector<EdgeRecord>& edges, uint64_t hint) {
  for (const EdgeRecord& e : edges) {
    hint = std::max({hint, e.src + 1, e.dst + 1});
  }
  return hint;
}

void format_record(std::ostream& os, const EdgeRecord& e) {
  os << e.src << '\t' << e.dst;
  if (e.weight != 1.0f) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, e.weight);
    os << '\t' << std::string_view(buf, ptr - buf);
    (void)ec;
  }
  os << '\n';
}

}  // namespace

uint64_t IncrementSchedule::total_edges() const {
  uint64_t n = 0;
  for (const auto& batch : increments) n += batch.size();
  return n;
}

std::vector<EdgeRecord> IncrementSchedule::accumulated(size_t k) const {
  k = std::min(k, increments.size());
  std::vector<EdgeRecord> out;
  for (size_t i = 0; i < k; ++i) {
    out.insert(out.end(), increments[i].begin(), increments[i].end());
  }
  return out;
}

std::vector<EdgeRecord> load_edge_list(const std::string& path,
                                       const LoadOptions& opt) {
  validate_options(opt);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open edge file: " + path);
  std::vector<EdgeRecord> out;
  std::string line;
  uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    append_parsed_line(out, line, path, line_no, opt);
  }
  if (line_no == 0) throw ParseError(path, 0, "empty file");
  return out;
}

IncrementSchedule load_increments(const std::vector<std::string>& paths,
                                  const LoadOptions& opt) {
  if (paths.empty()) throw ConfigError("no increment files given");
  IncrementSchedule schedule;
  for (const std::string& p : paths) {
    schedule.increments.push_back(load_edge_list(p, opt));
    schedule.vertex_count_hint =
        hint_from(schedule.increments.back(), schedule.vertex_count_hint);
  }
  return schedule;
}

IncrementSchedule load_increments_indexed(const std::string& edges_path,
                                          const std::string& index_path,
                                          const LoadOptions& opt) {
  // Index sizes describe the file as written, so split the directed
  // records first and symmetrize per batch afterwards.
  LoadOptions directed = opt;
  directed.undirected = false;
  const std::vector<EdgeRecord> all = load_edge_list(edges_path, directed);

  std::ifstream in(index_path);
  if (!in) throw ConfigError("cannot open increment index: " + index_path);
  std::vector<uint64_t> sizes;
  std::string line;
  uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    sizes.push_back(parse_u64(line, index_path, line_no, "batch size"));
  }
  if (sizes.empty()) throw ParseError(index_path, 0, "empty increment index");

  uint64_t sum = 0;
  for (uint64_t s : sizes) sum += s;
  if (sum != all.size()) {
    throw ParseError(index_path, line_no,
                     "batch sizes sum to " + std::to_string(sum) +
                         " edges but the edge file has " +
                         std::to_string(all.size()));
  }

  IncrementSchedule schedule;
  schedule.vertex_count_hint = hint_from(all, 0);
  auto it = all.begin();
  for (uint64_t s : sizes) {
    schedule.increments.emplace_back(it, it + s);
    if (opt.undirected) {
      schedule.increments.back() = symmetrize(schedule.increments.back());
    }
    it += s;
  }
  return schedule;
}

SamplerKind sampler_kind_from_string(const std::string& s) {
  if (s == "edge") return SamplerKind::Edge;
  if (s == "snowball") return SamplerKind::Snowball;
  throw ConfigError("unknown sampler kind: " + s);
}

const char* to_string(SamplerKind k) {
  return k == SamplerKind::Edge ? "edge" : "snowball";
}

IncrementSchedule gen_edge_sampled(const SamplerConfig& cfg) {
  if (cfg.kind != SamplerKind::Edge) throw ConfigError("sampler kind mismatch");
  if (cfg.base_graph.empty()) throw ConfigError("base graph is empty");
  if (cfg.increments == 0) throw ConfigError("increment count must be >= 1");

  std::vector<EdgeRecord> edges = cfg.base_graph;
  std::mt19937_64 rng(cfg.seed);
  shuffle_seeded(edges, rng);

  IncrementSchedule schedule;
  schedule.vertex_count_hint = hint_from(edges, 0);
  auto it = edges.begin();
  for (uint64_t s : split_sizes(edges.size(), cfg.increments)) {
    schedule.increments.emplace_back(it, it + s);
    it += s;
  }
  return schedule;
}

IncrementSchedule gen_snowball(const SamplerConfig& cfg) {
  if (cfg.kind != SamplerKind::Snowball) {
    throw ConfigError("sampler kind mismatch");
  }
  if (cfg.base_graph.empty()) throw ConfigError("base graph is empty");
  if (cfg.increments == 0) throw ConfigError("increment count must be >= 1");

  // Discovery treats records as traversable both ways; emission keeps the
  // original orientation.
  std::unordered_map<VertexId, std::vector<size_t>> incident;
  for (size_t i = 0; i < cfg.base_graph.size(); ++i) {
    incident[cfg.base_graph[i].src].push_back(i);
    if (cfg.base_graph[i].dst != cfg.base_graph[i].src) {
      incident[cfg.base_graph[i].dst].push_back(i);
    }
  }
  if (!incident.contains(cfg.snowball_start)) {
    throw ConfigError("snowball start vertex " +
                      std::to_string(cfg.snowball_start) +
                      " has no edges in the base graph");
  }

  std::mt19937_64 rng(cfg.seed);
  // Incident lists are shuffled once, in sorted vertex order so the result
  // does not depend on hash-map iteration; traversal and emission then
  // share one seeded order per vertex.
  std::vector<VertexId> keys;
  keys.reserve(incident.size());
  for (const auto& [v, list] : incident) keys.push_back(v);
  std::sort(keys.begin(), keys.end());
  for (VertexId v : keys) shuffle_seeded(incident[v], rng);

  std::vector<char> emitted(cfg.base_graph.size(), 0);
  std::unordered_set<VertexId> discovered;

  // A record is emitted the moment its second endpoint joins the region,
  // so a vertex discovered later brings more back-edges with it and batch
  // sizes climb. per_discovery[i] holds the edges that arrived with the
  // i-th discovered vertex.
  std::vector<std::vector<EdgeRecord>> per_discovery;
  auto discover = [&](VertexId v) {
    discovered.insert(v);
    per_discovery.emplace_back();
    for (size_t idx : incident[v]) {
      if (emitted[idx]) continue;
      const EdgeRecord& rec = cfg.base_graph[idx];
      const VertexId other = rec.src == v ? rec.dst : rec.src;
      if (other != v && !discovered.contains(other)) continue;
      emitted[idx] = 1;
      per_discovery.back().push_back(rec);
    }
  };

  std::queue<VertexId> frontier;
  discover(cfg.snowball_start);
  frontier.push(cfg.snowball_start);
  while (!frontier.empty()) {
    const VertexId u = frontier.front();
    frontier.pop();
    for (size_t idx : incident[u]) {
      const EdgeRecord& rec = cfg.base_graph[idx];
      const VertexId other = rec.src == u ? rec.dst : rec.src;
      if (discovered.contains(other)) continue;
      discover(other);
      frontier.push(other);
    }
  }

  IncrementSchedule schedule;
  schedule.vertex_count_hint = hint_from(cfg.base_graph, 0);
  size_t pos = 0;
  for (uint64_t group : split_sizes(per_discovery.size(), cfg.increments)) {
    schedule.increments.emplace_back();
    for (uint64_t i = 0; i < group; ++i, ++pos) {
      auto& batch = schedule.increments.back();
      batch.insert(batch.end(), per_discovery[pos].begin(),
                   per_discovery[pos].end());
    }
  }
  // Components the walk never reached still belong to the dataset; they
  // ride along at the very end, in input order.
  for (size_t i = 0; i < cfg.base_graph.size(); ++i) {
    if (!emitted[i]) schedule.increments.back().push_back(cfg.base_graph[i]);
  }
  return schedule;
}

std::vector<IncrementStats> schedule_stats(const IncrementSchedule& schedule) {
  std::vector<IncrementStats> stats;
  uint64_t cumulative = 0;
  for (const auto& batch : schedule.increments) {
    std::unordered_set<VertexId> seen;
    for (const EdgeRecord& e : batch) {
      seen.insert(e.src);
      seen.insert(e.dst);
    }
    cumulative += batch.size();
    stats.push_back(IncrementStats{batch.size(), cumulative, seen.size()});
  }
  return stats;
}

void write_stats_csv(const std::vector<IncrementStats>& stats,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write stats file: " + path);
  out << kStatsCsvHeader << "\n";
  for (size_t i = 0; i < stats.size(); ++i) {
    out << i + 1 << "," << stats[i].edges << "," << stats[i].cumulative_edges
        << "," << stats[i].distinct_vertices << "\n";
  }
  if (!out) throw ConfigError("failed writing stats file: " + path);
}

std::vector<std::string> write_increment_files(
    const IncrementSchedule& schedule, const std::string& dir,
    const std::string& stem) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  const size_t n = schedule.increments.size();
  for (size_t i = 0; i < n; ++i) {
    std::ostringstream name;
    name << stem << "_" << std::setw(2) << std::setfill('0') << i + 1
         << ".tsv";
    const std::string path =
        (std::filesystem::path(dir) / name.str()).string();
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write increment file: " + path);
    out << "# " << stem << " increment " << i + 1 << "/" << n << "\n";
    for (const EdgeRecord& e : schedule.increments[i]) format_record(out, e);
    if (!out) throw ConfigError("failed writing increment file: " + path);
    paths.push_back(path);
  }
  return paths;
}

std::vector<EdgeRecord> symmetrize(const std::vector<EdgeRecord>& edges) {
  std::vector<EdgeRecord> out;
  out.reserve(edges.size() * 2);
  for (const EdgeRecord& e : edges) {
    out.push_back(e);
    if (e.src != e.dst) out.push_back(EdgeRecord{e.dst, e.src, e.weight});
  }
  return out;
}

}  // namespace ccsim::workload
