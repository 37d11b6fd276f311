// Bundled platform descriptions (robots, the Bellagio fountains and a few
// organisms). The .mechx sources under data/platforms are embedded at build
// time into kinex/dataset_files.hpp.
#pragma once

#include <cctype>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kinex/dataset_files.hpp"
#include "kinex/specfile.hpp"

namespace kinex {

class DatasetCorrupt : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of files listed in data/platforms/MANIFEST.
inline constexpr std::size_t kDatasetManifestCount = detail::kManifestCount;

/// Every bundled platform, parsed strictly, in manifest order. Parsed once.
inline const std::vector<PlatformDocument>& load_dataset() {
  static const std::vector<PlatformDocument> docs = [] {
    std::vector<PlatformDocument> out;
    for (const auto& file : detail::kEmbeddedDataset) {
      try {
        out.push_back(parse_platform(file.text, {Strictness::strict}));
      } catch (const ParseError& e) {
        throw DatasetCorrupt(std::string(file.name) + ": " + e.what());
      }
    }
    return out;
  }();
  return docs;
}

inline std::vector<Platform> dataset_platforms() {
  std::vector<Platform> out;
  for (const auto& d : load_dataset()) out.push_back(d.platform);
  return out;
}

/// Lower-case alphanumerics with every other run collapsed to '-':
/// "C. elegans (anatomy)" -> "c-elegans-anatomy".
inline std::string slugify(std::string_view name) {
  std::string out;
  bool dash = false;
  for (unsigned char c : name) {
    if (std::isalnum(c)) {
      if (dash && !out.empty()) out += '-';
      dash = false;
      out += static_cast<char>(std::tolower(c));
    } else {
      dash = true;
    }
  }
  return out;
}

/// Looks a platform up by exact name or by slug; nullptr when absent.
inline const PlatformDocument* find_in_dataset(std::string_view name) {
  std::string slug = slugify(name);
  for (const auto& d : load_dataset())
    if (d.platform.name() == name || slugify(d.platform.name()) == slug) return &d;
  return nullptr;
}

inline std::string_view dataset_source_name(std::size_t index) {
  return detail::kEmbeddedDataset[index].name;
}

inline std::string_view dataset_source_text(std::size_t index) {
  return detail::kEmbeddedDataset[index].text;
}

}  // namespace kinex
