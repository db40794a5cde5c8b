#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <vector>

#include "pot/matrix.hpp"

namespace pot {

// On-disk layout of the binary feature format:
//
//   offset  size  field
//   0       4     magic "POTF"
//   4       1     version (u8, = 1)
//   5       4     rows    (u32 little-endian)
//   9       4     cols    (u32 little-endian)
//   13      4*n   rows*cols f32 little-endian, row-major
//
// Values are widened to double on load and narrowed to float on save, so
// anything loaded from this format round-trips bit-exactly.
inline constexpr char kFeatureMagic[4] = {'P', 'O', 'T', 'F'};
inline constexpr std::uint8_t kFeatureVersion = 1;
inline constexpr std::size_t kFeatureHeaderBytes = 13;

enum class FeatureFormat { Binary, Csv };

struct CsvOptions {
  bool skip_header = false;
};

// ".csv" or ".txt" (any case) selects Csv, everything else Binary.
FeatureFormat format_from_extension(const std::filesystem::path& path);

FeatureMatrix load_features(const std::filesystem::path& path, FeatureFormat format,
                            CsvOptions csv = {});
FeatureMatrix parse_features_binary(std::span<const std::byte> bytes);
FeatureMatrix parse_features_csv(std::string_view text, CsvOptions csv = {});

std::vector<std::byte> encode_features_binary(const FeatureMatrix& m);
void save_features(const FeatureMatrix& m, const std::filesystem::path& path);

// One integer per line (a single-column CSV is the same thing).
std::vector<std::size_t> parse_labels(std::string_view text,
                                      std::optional<std::size_t> num_classes = std::nullopt,
                                      CsvOptions csv = {});
std::vector<std::size_t> load_labels(const std::filesystem::path& path,
                                     std::optional<std::size_t> num_classes = std::nullopt,
                                     CsvOptions csv = {});
void save_labels(std::span<const std::size_t> labels, const std::filesystem::path& path);

class LabeledDataset {
 public:
  // num_classes defaults to max label + 1.
  LabeledDataset(FeatureMatrix features, std::vector<std::size_t> labels,
                 std::optional<std::size_t> num_classes = std::nullopt);

  const FeatureMatrix& features() const noexcept { return features_; }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  const std::set<std::size_t>& present_classes() const noexcept { return present_; }

 private:
  FeatureMatrix features_;
  std::vector<std::size_t> labels_;
  std::size_t num_classes_;
  std::set<std::size_t> present_;
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pot
