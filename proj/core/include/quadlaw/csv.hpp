#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>

#include "quadlaw/errors.hpp"

namespace quadlaw::csv {

// Canonical numeric cell: 12 significant digits, shortest form.
std::string num(double v);
std::string num(int v);
std::string num(long v);

// Comma-separated, header row, LF-terminated lines; all doubles go through
// num() so identical configs produce byte-identical artifacts.
class Writer {
 public:
  explicit Writer(const std::filesystem::path& path);

  void comment(std::string_view text);                      // "# text"
  void header(std::initializer_list<std::string_view> cols);
  void row(std::initializer_list<std::string> cells);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream os_;
};

}  // namespace quadlaw::csv
