#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rpys/corpus.hpp"
#include "rpys/ingest.hpp"

namespace rpys::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(RPYS_FIXTURE_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Scratch directory removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("rpys-" + tag + "-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
};

inline Record make_record(std::string id, int year, std::vector<std::string> refs,
                          std::string venue = "SCIENTOMETRICS", std::string doc_type = "Article") {
  Record r;
  r.id = std::move(id);
  r.pub_year = year;
  r.venue = std::move(venue);
  r.doc_type = std::move(doc_type);
  for (const auto& raw : refs) r.cited_refs.push_back(parse_cited_ref(raw));
  return r;
}

}  // namespace rpys::testing
