#include "cogmap/dataset.hpp"

#include <charconv>
#include <cstdio>

#include "cogmap/file_io.hpp"

namespace cogmap {

std::size_t Dataset::sample_count() const {
  std::size_t n = 0;
  for (const auto& t : trajectories) n += t.size();
  return n;
}

void Dataset::validate() const {
  if (dof == 0) throw std::invalid_argument("dataset dof must be positive");
  for (const auto& t : trajectories) {
    if (t.size() < 2) throw std::invalid_argument("every trajectory needs at least two samples");
    for (const auto& q : t) {
      if (static_cast<std::size_t>(q.size()) != dof) {
        throw std::invalid_argument("dataset sample dimension differs from dof");
      }
    }
  }
}

std::vector<JointConfig> Dataset::samples() const {
  std::vector<JointConfig> out;
  out.reserve(sample_count());
  for (const auto& t : trajectories) out.insert(out.end(), t.begin(), t.end());
  return out;
}

std::string format_dataset(const Dataset& data) {
  data.validate();
  std::string out = "#dof " + std::to_string(data.dof) + "\n";
  char buf[64];
  for (std::size_t i = 0; i < data.trajectories.size(); ++i) {
    if (i > 0) out += '\n';
    for (const auto& q : data.trajectories[i]) {
      for (Eigen::Index k = 0; k < q.size(); ++k) {
        // Shortest representation that round-trips exactly.
        auto res = std::to_chars(buf, buf + sizeof(buf), q[k]);
        if (k > 0) out += ' ';
        out.append(buf, res.ptr);
      }
      out += '\n';
    }
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Dataset parse_dataset(std::string_view text) {
  Dataset data;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  std::vector<JointConfig> current;

  auto flush = [&](std::size_t at) {
    if (current.empty()) return;
    if (current.size() < 2) throw ParseError("trajectory with fewer than two samples", at);
    data.trajectories.push_back(std::move(current));
    current.clear();
  };

  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    const std::string_view line = trim(text.substr(pos, end - pos));
    const bool terminated = nl != std::string_view::npos;
    pos = terminated ? nl + 1 : text.size();
    ++line_no;

    if (!have_header) {
      if (line.substr(0, 5) != "#dof ") throw ParseError("missing '#dof N' header", line_no);
      std::size_t dof = 0;
      const auto digits = trim(line.substr(5));
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), dof);
      if (ec != std::errc() || p != digits.data() + digits.size() || dof == 0) {
        throw ParseError("bad dof in header", line_no);
      }
      data.dof = dof;
      have_header = true;
      continue;
    }
    if (line.empty()) {
      flush(line_no);
      continue;
    }
    // A final line without its newline is a truncated write.
    if (!terminated) throw ParseError("truncated final line", line_no);

    JointConfig q(static_cast<Eigen::Index>(data.dof));
    const char* p = line.data();
    const char* last = line.data() + line.size();
    for (std::size_t k = 0; k < data.dof; ++k) {
      while (p < last && (*p == ' ' || *p == '\t')) ++p;
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, last, v);
      if (ec != std::errc() || next == p) throw ParseError("expected " + std::to_string(data.dof) + " numbers", line_no);
      q[static_cast<Eigen::Index>(k)] = v;
      p = next;
    }
    while (p < last && (*p == ' ' || *p == '\t')) ++p;
    if (p != last) throw ParseError("too many values on line", line_no);
    current.push_back(std::move(q));
  }
  if (!have_header) throw ParseError("empty dataset file", line_no);
  flush(line_no);
  if (data.trajectories.empty()) throw ParseError("dataset contains no trajectories", line_no);
  return data;
}

void save_dataset(const Dataset& data, const std::filesystem::path& path) {
  write_file_atomic(path, format_dataset(data));
}

Dataset load_dataset(const std::filesystem::path& path) { return parse_dataset(read_text_file(path)); }

}  // namespace cogmap
