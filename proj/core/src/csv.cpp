#include "quadlaw/csv.hpp"

#include <cstdio>

namespace quadlaw::csv {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string num(int v) { return std::to_string(v); }
std::string num(long v) { return std::to_string(v); }

Writer::Writer(const std::filesystem::path& path) : path_(path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("csv: cannot create directory " +
                          path.parent_path().string());
  }
  os_.open(path, std::ios::binary | std::ios::trunc);
  if (!os_) throw IoError("csv: cannot open " + path.string());
}

void Writer::comment(std::string_view text) {
  os_ << "# " << text << '\n';
  if (!os_) throw IoError("csv: write failed on " + path_.string());
}

void Writer::header(std::initializer_list<std::string_view> cols) {
  bool first = true;
  for (auto c : cols) {
    if (!first) os_ << ',';
    os_ << c;
    first = false;
  }
  os_ << '\n';
  if (!os_) throw IoError("csv: write failed on " + path_.string());
}

void Writer::row(std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) os_ << ',';
    os_ << c;
    first = false;
  }
  os_ << '\n';
  if (!os_) throw IoError("csv: write failed on " + path_.string());
}

}  // namespace quadlaw::csv
