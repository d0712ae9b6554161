#pragma once

#include "eprfw/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace eprfw::cli {

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Rectangular numeric result with a header row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Shortest-safe round-trip rendering: 17 significant digits.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << t.columns[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_number(row[i]);
    }
    os << '\n';
  }
}

/// {"metadata": ..., "records": [{column: value, ...}, ...]}
inline void write_json(std::ostream& os, const Table& t, const nlohmann::ordered_json& metadata) {
  nlohmann::ordered_json doc;
  doc["metadata"] = metadata;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec;
    for (std::size_t i = 0; i < row.size(); ++i) {
      rec[t.columns[i]] = row[i];
    }
    doc["records"].push_back(std::move(rec));
  }
  os << doc.dump(2) << '\n';
}

/// Parses a CSV produced by write_csv.
inline Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) {
    return t;
  }
  std::stringstream header(line);
  for (std::string cell; std::getline(header, cell, ',');) {
    t.columns.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw IoError("malformed CSV cell '" + cell + "'");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Evaluates fn(i) for i in [0, n) on a small worker pool; results land in
/// input order regardless of scheduling.
template <typename Result>
std::vector<Result> parallel_map(std::size_t n, const std::function<Result(std::size_t)>& fn,
                                 unsigned workers = 0) {
  std::vector<Result> out(n);
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          out[i] = fn(i);
        } catch (...) {
          if (!failed.exchange(true)) {
            failure = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return out;
}

/// Writes `content` to `path`, or to `fallback` when path is empty.
inline void emit(const std::string& content, const std::string& path, std::ostream& fallback) {
  if (path.empty()) {
    fallback << content;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw IoError("cannot open output file '" + path + "'");
  }
  f << content;
  f.flush();
  if (!f) {
    throw IoError("failed writing output file '" + path + "'");
  }
}

}  // namespace eprfw::cli
