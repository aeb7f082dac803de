#include "eigloc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "eigloc/error.hpp"

namespace eigloc {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what, line);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  T value{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_csv(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

enum class Field { Real, Integer, Pattern };

struct MarketEntry {
  std::size_t row;  // 0-based
  std::size_t col;
  double value;
  std::int64_t count;  // exact value for integer fields
  std::size_t line;
};

struct MarketData {
  std::size_t n = 0;
  bool symmetric = false;
  Field field = Field::Real;
  std::vector<MarketEntry> entries;
};

MarketData read_market(std::istream& in) {
  MarketData data;
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) parse_fail(1, "empty file");
  ++lineno;
  const auto header = split_ws(line);
  if (header.size() != 5 || lower(std::string(header[0])) != "%%matrixmarket") {
    parse_fail(lineno, "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'");
  }
  if (lower(std::string(header[1])) != "matrix" || lower(std::string(header[2])) != "coordinate") {
    parse_fail(lineno, "only 'matrix coordinate' files are supported");
  }
  const std::string field = lower(std::string(header[3]));
  if (field == "real") {
    data.field = Field::Real;
  } else if (field == "integer") {
    data.field = Field::Integer;
  } else if (field == "pattern") {
    data.field = Field::Pattern;
  } else {
    parse_fail(lineno, "unsupported field '" + field + "'");
  }
  const std::string symmetry = lower(std::string(header[4]));
  if (symmetry == "symmetric") {
    data.symmetric = true;
  } else if (symmetry != "general") {
    parse_fail(lineno, "unsupported symmetry '" + symmetry + "'");
  }

  std::optional<std::size_t> nnz;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '%') continue;
    const auto tok = split_ws(body);
    if (!nnz) {
      if (tok.size() != 3) parse_fail(lineno, "expected 'rows cols entries'");
      auto rows = parse_number<std::size_t>(tok[0]);
      auto cols = parse_number<std::size_t>(tok[1]);
      auto count = parse_number<std::size_t>(tok[2]);
      if (!rows || !cols || !count) parse_fail(lineno, "malformed size line");
      if (*rows != *cols) parse_fail(lineno, "matrix is not square");
      if (*rows == 0) parse_fail(lineno, "matrix has no rows");
      data.n = *rows;
      nnz = *count;
      data.entries.reserve(*count);
      continue;
    }
    const std::size_t want = data.field == Field::Pattern ? 2 : 3;
    if (tok.size() != want) parse_fail(lineno, "expected " + std::to_string(want) + " fields");
    auto r = parse_number<std::size_t>(tok[0]);
    auto c = parse_number<std::size_t>(tok[1]);
    if (!r || !c || *r < 1 || *c < 1 || *r > data.n || *c > data.n) {
      parse_fail(lineno, "index out of range");
    }
    MarketEntry e{*r - 1, *c - 1, 1.0, 1, lineno};
    if (data.field == Field::Integer) {
      auto v = parse_number<std::int64_t>(tok[2]);
      if (!v) parse_fail(lineno, "malformed integer value");
      e.count = *v;
      e.value = static_cast<double>(*v);
    } else if (data.field == Field::Real) {
      auto v = parse_number<double>(tok[2]);
      if (!v || !std::isfinite(*v)) parse_fail(lineno, "malformed real value");
      e.value = *v;
    }
    data.entries.push_back(e);
  }
  if (!nnz) parse_fail(lineno, "missing size line");
  if (data.entries.size() != *nnz) {
    parse_fail(lineno, "expected " + std::to_string(*nnz) + " entries, found " +
                           std::to_string(data.entries.size()));
  }
  return data;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string edge_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

WeightedGraph read_graph(std::istream& in) {
  const MarketData data = read_market(in);
  using Key = std::pair<std::size_t, std::size_t>;
  std::map<Key, const MarketEntry*> seen;
  for (const MarketEntry& e : data.entries) {
    if (e.row == e.col) {
      if (e.value == 0.0) continue;
      parse_fail(e.line, "self loop at node " + std::to_string(e.row));
    }
    if (e.value < 0.0) {
      throw Error(ErrorCode::NegativeWeight,
                  "edge " + edge_name(std::min(e.row, e.col), std::max(e.row, e.col)) +
                      " has negative weight",
                  e.line);
    }
    const Key key = data.symmetric ? Key{std::min(e.row, e.col), std::max(e.row, e.col)}
                                   : Key{e.row, e.col};
    if (!seen.emplace(key, &e).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "edge " + edge_name(std::min(e.row, e.col), std::max(e.row, e.col)) +
                      " repeated at line " + std::to_string(e.line),
                  e.line);
    }
  }

  std::vector<Edge> edges;
  for (const auto& [key, entry] : seen) {
    auto [i, j] = key;
    if (!data.symmetric) {
      auto mirror = seen.find({j, i});
      if (mirror == seen.end() || mirror->second->value != entry->value) {
        parse_fail(entry->line, "general storage is not symmetric at " + edge_name(i, j));
      }
      if (i > j) continue;
    }
    edges.push_back({i, j, entry->value});
  }
  return WeightedGraph(data.n, std::move(edges));
}

NodeLabels read_labels(std::istream& in, std::size_t n) {
  NodeLabels labels;
  labels.groups.assign(n, kNoGroup);
  std::vector<bool> seen(n, false);
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto cols = split_csv(body);
    auto node = parse_number<std::size_t>(cols[0]);
    if (first && !node) {  // header row
      first = false;
      continue;
    }
    first = false;
    if (cols.size() < 2 || cols.size() > 3) parse_fail(lineno, "expected node_id,group_id[,subgroup_id]");
    if (!node || *node >= n) parse_fail(lineno, "node id out of range");
    if (seen[*node]) parse_fail(lineno, "node " + std::to_string(*node) + " labeled twice");
    seen[*node] = true;
    auto read_id = [&](std::string_view s) {
      if (s.empty()) return kNoGroup;
      auto v = parse_number<int>(s);
      if (!v || *v < 0) parse_fail(lineno, "group ids must be nonnegative integers");
      return *v;
    };
    labels.groups[*node] = read_id(cols[1]);
    if (cols.size() == 3) {
      if (labels.subgroups.empty()) labels.subgroups.assign(n, kNoGroup);
      labels.subgroups[*node] = read_id(cols[2]);
    }
  }
  return labels;
}

WeightedGraph parse_graph(const std::filesystem::path& path,
                          const std::optional<std::filesystem::path>& label_path) {
  auto in = open_input(path);
  WeightedGraph g = read_graph(in);
  if (!label_path) return g;
  auto lin = open_input(*label_path);
  NodeLabels labels = read_labels(lin, g.n());
  return g.with_labels(std::move(labels.groups), std::move(labels.subgroups));
}

void write_graph(const WeightedGraph& g, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << g.n() << ' ' << g.n() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << (e.j + 1) << ' ' << (e.i + 1) << ' ' << format_real(e.w) << '\n';
  }
}

void write_labels(const WeightedGraph& g, std::ostream& out) {
  out << (g.has_subgroups() ? "node_id,group_id,subgroup_id\n" : "node_id,group_id\n");
  auto id = [](int v) { return v == kNoGroup ? std::string() : std::to_string(v); };
  for (NodeId i = 0; i < g.n(); ++i) {
    out << i << ',' << (g.has_groups() ? id(g.groups()[i]) : std::string());
    if (g.has_subgroups()) out << ',' << id(g.subgroups()[i]);
    out << '\n';
  }
}

void write_graph(const WeightedGraph& g, const std::filesystem::path& path,
                 const std::optional<std::filesystem::path>& label_path) {
  {
    auto out = open_output(path);
    write_graph(g, out);
    finish(out, path);
  }
  if (label_path) {
    auto out = open_output(*label_path);
    write_labels(g, out);
    finish(out, *label_path);
  }
}

MigrationInput read_migration(std::istream& flows, std::istream& populations) {
  const MarketData data = read_market(flows);
  if (data.field == Field::Pattern) parse_fail(1, "flow file needs counts");
  MigrationInput m;
  m.n = data.n;
  for (const MarketEntry& e : data.entries) {
    if (data.field == Field::Real) {
      if (e.value != std::floor(e.value)) parse_fail(e.line, "flow counts must be integers");
    }
    const std::int64_t count =
        data.field == Field::Integer ? e.count : static_cast<std::int64_t>(e.value);
    if (e.row == e.col) {
      if (count == 0) continue;
      parse_fail(e.line, "self flow at county " + std::to_string(e.row));
    }
    if (count < 0) parse_fail(e.line, "negative flow count");
    m.flows.push_back({e.row, e.col, count});
  }

  std::vector<std::optional<double>> pops(m.n);
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(populations, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto cols = split_csv(body);
    auto node = parse_number<std::size_t>(cols[0]);
    if (first && !node) {
      first = false;
      continue;
    }
    first = false;
    if (cols.size() != 2) parse_fail(lineno, "expected node_id,population");
    if (!node || *node >= m.n) parse_fail(lineno, "county id out of range");
    auto pop = parse_number<double>(cols[1]);
    if (!pop) parse_fail(lineno, "malformed population");
    if (pops[*node]) parse_fail(lineno, "county " + std::to_string(*node) + " listed twice");
    pops[*node] = *pop;
  }
  m.populations.reserve(m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    if (!pops[i]) {
      throw Error(ErrorCode::MissingPopulation,
                  "no population for county " + std::to_string(i), i);
    }
    m.populations.push_back(*pops[i]);
  }
  (void)migration_similarity(m);  // validates symmetry and populations
  return m;
}

MigrationInput parse_migration(const std::filesystem::path& flows_path,
                               const std::filesystem::path& populations_path) {
  auto flows = open_input(flows_path);
  auto pops = open_input(populations_path);
  return read_migration(flows, pops);
}

TwoLevelSpec load_spec(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream text;
  text << in.rdbuf();
  return spec_from_json(text.str());
}

std::string transition_json(const std::optional<TransitionReport>& report) {
  std::ostringstream out;
  out << "{\n";
  if (!report) {
    out << "  \"evaluated\": false,\n  \"rank\": null,\n  \"baseline\": null,\n"
           "  \"observed_factor\": null\n";
  } else {
    auto real = [](double v) { return std::isfinite(v) ? format_real(v) : std::string("null"); };
    out << "  \"evaluated\": true,\n";
    out << "  \"rank\": " << (report->rank ? std::to_string(*report->rank) : "null") << ",\n";
    out << "  \"baseline\": " << real(report->baseline) << ",\n";
    out << "  \"observed_factor\": " << real(report->observed_factor) << ",\n";
    out << "  \"window\": " << report->window << ",\n";
    out << "  \"threshold\": " << real(report->threshold) << "\n";
  }
  out << "}\n";
  return out.str();
}

std::string partitions_json(const std::vector<RankedPartition>& partitions) {
  std::ostringstream out;
  out << "[";
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    const auto& [rank, part] = partitions[p];
    out << (p == 0 ? "\n" : ",\n");
    out << "  {\"rank\": " << rank << ", \"conductance\": "
        << (part.conductance ? format_real(*part.conductance) : std::string("null"))
        << ", \"size\": " << part.first_side_count() << ", \"side\": [";
    for (std::size_t i = 0; i < part.size(); ++i) {
      out << (i ? "," : "") << (part.side[i] ? 1 : 0);
    }
    out << "]}";
  }
  out << (partitions.empty() ? "]\n" : "\n]\n");
  return out.str();
}

void emit_report(const AnalysisReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());

  auto write = [&](const std::string& name, auto&& body) {
    const auto path = out_dir / name;
    auto out = open_output(path);
    body(out);
    finish(out, path);
  };

  write("spectrum.csv", [&](std::ostream& out) {
    out << "rank,eigenvalue,sq_spectrum_frac\n";
    for (const auto& rec : report.records) {
      out << rec.rank << ',' << format_real(rec.lambda) << ','
          << format_real(report.square_spectrum[rec.rank]) << '\n';
    }
  });
  write("ipr.csv", [&](std::ostream& out) {
    out << "rank,eigenvalue,ipr,degenerate_flag\n";
    for (const auto& p : report.curve.entries) {
      out << p.rank << ',' << format_real(p.lambda) << ',' << format_real(p.ipr) << ','
          << (p.degenerate ? 1 : 0) << '\n';
    }
  });
  for (const auto& rec : report.records) {
    const auto v = report.basis.vector(rec.rank);
    write("eigvec_" + std::to_string(rec.rank) + ".csv", [&](std::ostream& out) {
      out << "node,value,csl\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << i << ',' << format_real(v[i]) << ',' << format_real(rec.csl.scores[i]) << '\n';
      }
    });
    write("hist_" + std::to_string(rec.rank) + ".csv", [&](std::ostream& out) {
      out << "bin_lo,bin_hi,count\n";
      const auto& h = rec.histogram;
      for (std::size_t b = 0; b < h.counts.size(); ++b) {
        out << format_real(h.bin_edges[b]) << ',' << format_real(h.bin_edges[b + 1]) << ','
            << h.counts[b] << '\n';
      }
    });
  }
  write("groups.csv", [&](std::ostream& out) {
    out << "rank,group,l2_frac,l1_frac\n";
    for (const GroupMass& row : report.groups) {
      out << row.rank << ',' << row.group << ',' << format_real(row.l2) << ','
          << format_real(row.l1) << '\n';
    }
  });
  write("transition.json", [&](std::ostream& out) { out << transition_json(report.transition); });
  write("partitions.json", [&](std::ostream& out) { out << partitions_json(report.partitions); });
}

}  // namespace eigloc
