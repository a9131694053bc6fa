#include "bsc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "bsc/error.hpp"
#include "bsc/parallel.hpp"
#include "bsc/pareto.hpp"

namespace bsc {

SolutionEnumerator::SolutionEnumerator(int n, int k) : n_(n), k_(k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("enumeration needs 1 <= k <= n");
}

bool SolutionEnumerator::advance_partition() {
  for (int i = n_ - 1; i >= 1; --i) {
    const auto u = static_cast<std::size_t>(i);
    const int limit = std::min(prefix_max_[u - 1] + 1, k_ - 1);
    if (rgs_[u] < limit) {
      ++rgs_[u];
      prefix_max_[u] = std::max(prefix_max_[u - 1], rgs_[u]);
      for (auto j = u + 1; j < rgs_.size(); ++j) {
        rgs_[j] = 0;
        prefix_max_[j] = prefix_max_[u];
      }
      return true;
    }
  }
  return false;
}

bool SolutionEnumerator::next(Chromosome& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    rgs_.assign(static_cast<std::size_t>(n_), 0);
    prefix_max_.assign(static_cast<std::size_t>(n_), 0);
    order_ = {0};
  } else if (!std::next_permutation(order_.begin(), order_.end())) {
    if (!advance_partition()) {
      done_ = true;
      return false;
    }
    order_.resize(static_cast<std::size_t>(prefix_max_.back()) + 1);
    std::iota(order_.begin(), order_.end(), 0);
  }
  std::vector<Gene> genes(rgs_.size());
  for (std::size_t i = 0; i < genes.size(); ++i) genes[i] = order_[static_cast<std::size_t>(rgs_[i])];
  out = Chromosome(std::move(genes));
  return true;
}

std::vector<Chromosome> enumerate_solutions(int n, int k, std::uint64_t cap) {
  const BigInt size = search_space_size(n, k);
  if (size > BigInt(cap)) {
    throw CapExceeded("solution space holds " + size.str() + " chromosomes, above the cap of " +
                          std::to_string(cap),
                      size.str());
  }
  std::vector<Chromosome> out;
  out.reserve(static_cast<std::size_t>(size));
  SolutionEnumerator walk(n, k);
  Chromosome c;
  while (walk.next(c)) out.push_back(c);
  return out;
}

bool GlobalFront::contains(const Chromosome& c) const {
  return std::binary_search(solutions.begin(), solutions.end(), FrontMember{c, {}, 0.0},
                            [](const FrontMember& a, const FrontMember& b) {
                              return a.chromosome < b.chromosome;
                            });
}

GlobalFront global_front(const ObjectiveSource& source, int k, double threshold,
                         const std::string& split_name, int threads, std::uint64_t cap) {
  const int n = static_cast<int>(source.n_features());
  const auto all = enumerate_solutions(n, k, cap);
  const auto measured =
      threads == 1 ? evaluate_batch_serial(source, all) : evaluate_batch(source, all, threads);

  std::vector<Objectives3> points;
  double lowest = measured.front().raw_cost;
  for (const auto& m : measured) {
    points.push_back({m.coverage, m.accuracy, -m.raw_cost});
    lowest = std::min(lowest, m.raw_cost);
  }
  GlobalFront front;
  front.n = n;
  front.k = k;
  front.threshold = threshold;
  front.split = split_name;
  front.evaluated = all.size();
  for (auto i : non_dominated(points)) {
    front.solutions.push_back({all[i], measured[i], lowest / measured[i].raw_cost});
  }
  std::sort(front.solutions.begin(), front.solutions.end(),
            [](const FrontMember& a, const FrontMember& b) { return a.chromosome < b.chromosome; });
  return front;
}

std::vector<std::size_t> track_recovery(const RunResult& run, const GlobalFront& front) {
  std::vector<std::size_t> counts;
  for (const auto& g : run.trace) {
    if (g.unique_members.empty() && g.unique > 0) {
      throw DomainError("recovery tracking needs a trace recorded with keep_members");
    }
    counts.push_back(static_cast<std::size_t>(std::count_if(
        g.unique_members.begin(), g.unique_members.end(),
        [&](const Chromosome& c) { return front.contains(c); })));
  }
  return counts;
}

std::vector<double> mean_recovery(const std::vector<std::vector<std::size_t>>& runs) {
  std::size_t length = 0;
  for (const auto& r : runs) length = std::max(length, r.size());
  std::vector<double> mean(length, 0.0);
  if (runs.empty()) return mean;
  for (std::size_t h = 0; h < length; ++h) {
    double total = 0.0;
    for (const auto& r : runs) {
      if (!r.empty()) total += static_cast<double>(r[std::min(h, r.size() - 1)]);
    }
    mean[h] = total / static_cast<double>(runs.size());
  }
  return mean;
}

// ---------------------------------------------------------------------------
// Front files

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError(where + ": cannot parse number '" + s + "'");
  }
}

constexpr const char* kColumns = "chromosome,g1,g2,raw_cost,g3,rank,fitness";

} // namespace

std::vector<FrontRecord> to_records(const GlobalFront& front) {
  std::vector<FrontRecord> out;
  for (const auto& m : front.solutions) {
    const double scalar = std::sqrt(m.measurement.coverage * m.measurement.coverage +
                                    m.measurement.accuracy * m.measurement.accuracy +
                                    m.inverse_cost * m.inverse_cost);
    out.push_back({m.chromosome, m.measurement.coverage, m.measurement.accuracy,
                   m.measurement.raw_cost, m.inverse_cost, 0, scalar});
  }
  return out;
}

std::vector<FrontRecord> to_records(const std::vector<Solution>& solutions) {
  std::vector<FrontRecord> out;
  for (const auto& s : solutions) {
    out.push_back({s.chromosome, s.objectives.coverage, s.objectives.accuracy,
                   s.objectives.raw_cost, s.objectives.inverse_cost, s.rank, s.fitness});
  }
  return out;
}

void write_front(const std::filesystem::path& path, const FrontFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "# " << file.format << '\n';
  out << "# config_hash=" << file.config_hash << '\n';
  out << '#';
  for (const auto& [key, value] : file.metadata) out << ' ' << key << '=' << value;
  out << '\n' << kColumns << '\n';
  for (const auto& r : file.records) {
    out << r.chromosome.to_string() << ',' << format_double(r.coverage) << ','
        << format_double(r.accuracy) << ',' << format_double(r.raw_cost) << ','
        << format_double(r.inverse_cost) << ',' << r.rank << ',' << format_double(r.fitness) << '\n';
  }
  if (!out) throw DataError("failed writing " + path.string());
}

FrontFile read_front(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open front file " + path.string());
  FrontFile file;
  std::string line;
  std::size_t line_no = 0;
  int comment_lines = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (line[0] == '#') {
      std::string body = line.size() > 1 ? line.substr(line[1] == ' ' ? 2 : 1) : "";
      if (comment_lines == 0) {
        file.format = body;
      } else if (body.rfind("config_hash=", 0) == 0) {
        file.config_hash = body.substr(12);
      } else {
        std::istringstream fields(body);
        std::string kv;
        while (fields >> kv) {
          const auto eq = kv.find('=');
          if (eq != std::string::npos) file.metadata.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        }
      }
      ++comment_lines;
      continue;
    }
    if (!header_seen) {
      if (line != kColumns) throw DataError(where + ": unexpected column header");
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) throw DataError(where + ": expected 7 fields");
    FrontRecord r;
    try {
      r.chromosome = Chromosome::parse(cells[0]);
    } catch (const InvalidChromosome& e) {
      throw DataError(where + ": " + e.what());
    }
    r.coverage = parse_double(cells[1], where);
    r.accuracy = parse_double(cells[2], where);
    r.raw_cost = parse_double(cells[3], where);
    r.inverse_cost = parse_double(cells[4], where);
    r.rank = static_cast<int>(parse_double(cells[5], where));
    r.fitness = parse_double(cells[6], where);
    file.records.push_back(std::move(r));
  }
  if (file.format.rfind("bsc-front/", 0) != 0) {
    throw DataError(path.string() + ": not a front file (format line '" + file.format + "')");
  }
  if (!header_seen) throw DataError(path.string() + ": missing column header");
  return file;
}

GlobalFront front_from_file(const FrontFile& file) {
  GlobalFront front;
  for (const auto& [key, value] : file.metadata) {
    if (key == "n") front.n = std::stoi(value);
    if (key == "k") front.k = std::stoi(value);
    if (key == "threshold") front.threshold = std::stod(value);
    if (key == "split") front.split = value;
    if (key == "evaluated") front.evaluated = std::stoull(value);
  }
  for (const auto& r : file.records) {
    Measurement m;
    m.coverage = r.coverage;
    m.accuracy = r.accuracy;
    m.raw_cost = r.raw_cost;
    front.solutions.push_back({r.chromosome, m, r.inverse_cost});
  }
  std::sort(front.solutions.begin(), front.solutions.end(),
            [](const FrontMember& a, const FrontMember& b) { return a.chromosome < b.chromosome; });
  return front;
}

} // namespace bsc
