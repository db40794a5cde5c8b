#include "pot/ingest.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <utility>

#include "pot/errors.hpp"

namespace pot {
namespace {

std::uint32_t read_u32_le(std::span<const std::byte> b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

void write_u32_le(std::vector<std::byte>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::byte>((v >> shift) & 0xffu));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits into lines, dropping '\r' and blank lines but keeping the original
// line numbers (0-based) for error messages.
std::vector<std::pair<std::size_t, std::string_view>> split_lines(std::string_view text, bool skip_header) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t lineno = 0;
  bool header_pending = skip_header;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = trim(line);
    if (header_pending) {
      header_pending = false;
    } else if (!line.empty()) {
      lines.emplace_back(lineno, line);
    }
    ++lineno;
  }
  return lines;
}

}  // namespace

FeatureFormat format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" || ext == ".txt" ? FeatureFormat::Csv : FeatureFormat::Binary;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::IoFailure, "read failed for " + path.string());
  return text;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::IoFailure, "write failed for " + path.string());
}

FeatureMatrix parse_features_binary(std::span<const std::byte> bytes) {
  if (bytes.size() < kFeatureHeaderBytes) {
    throw Error(ErrorKind::MalformedHeader,
                "truncated header: " + std::to_string(bytes.size()) + " bytes, need " +
                    std::to_string(kFeatureHeaderBytes));
  }
  if (std::memcmp(bytes.data(), kFeatureMagic, 4) != 0) {
    throw Error(ErrorKind::MalformedHeader, "bad magic at byte offset 0");
  }
  if (static_cast<std::uint8_t>(bytes[4]) != kFeatureVersion) {
    throw Error(ErrorKind::MalformedHeader,
                "unsupported version " + std::to_string(static_cast<int>(bytes[4])) + " at byte offset 4");
  }
  const std::uint32_t rows = read_u32_le(bytes, 5);
  const std::uint32_t cols = read_u32_le(bytes, 9);
  if (rows == 0) throw Error(ErrorKind::MalformedHeader, "zero rows at byte offset 5");
  if (cols == 0) throw Error(ErrorKind::MalformedHeader, "zero cols at byte offset 9");

  const std::uint64_t count = static_cast<std::uint64_t>(rows) * cols;
  const std::uint64_t expected = kFeatureHeaderBytes + 4 * count;
  if (bytes.size() != expected) {
    throw Error(ErrorKind::DimensionMismatch,
                "payload ends at byte offset " + std::to_string(bytes.size()) + ", header " +
                    std::to_string(rows) + "x" + std::to_string(cols) + " requires " +
                    std::to_string(expected) + " bytes");
  }

  std::vector<double> data(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::size_t off = kFeatureHeaderBytes + 4 * k;
    const float v = std::bit_cast<float>(read_u32_le(bytes, off));
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NonFiniteValue,
                  "byte offset " + std::to_string(off) + " (row " + std::to_string(k / cols) + ")");
    }
    data[k] = static_cast<double>(v);
  }
  return FeatureMatrix(rows, cols, std::move(data));
}

FeatureMatrix parse_features_csv(std::string_view text, CsvOptions csv) {
  const auto lines = split_lines(text, csv.skip_header);
  if (lines.empty()) throw Error(ErrorKind::DimensionMismatch, "CSV contains no data rows");

  std::vector<double> data;
  std::size_t cols = 0;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    std::string_view line = lines[r].second;
    std::size_t c = 0;
    while (true) {
      const auto comma = line.find(',');
      const std::string_view field = trim(line.substr(0, comma));
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
        // from_chars rejects out-of-range magnitudes; treat them as non-finite.
        if (ec == std::errc::result_out_of_range) {
          throw Error(ErrorKind::NonFiniteValue, "row " + std::to_string(r) + ", column " + std::to_string(c));
        }
        throw Error(ErrorKind::MalformedCsv, "line " + std::to_string(lines[r].first) + ", column " +
                                                 std::to_string(c) + ": '" + std::string(field) + "'");
      }
      if (!std::isfinite(value)) {
        throw Error(ErrorKind::NonFiniteValue, "row " + std::to_string(r) + ", column " + std::to_string(c));
      }
      data.push_back(value);
      ++c;
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (r == 0) {
      cols = c;
    } else if (c != cols) {
      throw Error(ErrorKind::DimensionMismatch, "row " + std::to_string(r) + " has " + std::to_string(c) +
                                                    " columns, expected " + std::to_string(cols));
    }
  }
  return FeatureMatrix(lines.size(), cols, std::move(data));
}

FeatureMatrix load_features(const std::filesystem::path& path, FeatureFormat format, CsvOptions csv) {
  const std::string raw = read_text_file(path);
  if (format == FeatureFormat::Csv) return parse_features_csv(raw, csv);
  return parse_features_binary(std::as_bytes(std::span(raw.data(), raw.size())));
}

std::vector<std::byte> encode_features_binary(const FeatureMatrix& m) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (m.rows() > kMax || m.cols() > kMax) {
    throw Error(ErrorKind::DimensionMismatch, "matrix too large for u32 header");
  }
  std::vector<std::byte> out;
  out.reserve(kFeatureHeaderBytes + 4 * m.data().size());
  for (char ch : kFeatureMagic) out.push_back(static_cast<std::byte>(ch));
  out.push_back(static_cast<std::byte>(kFeatureVersion));
  write_u32_le(out, static_cast<std::uint32_t>(m.rows()));
  write_u32_le(out, static_cast<std::uint32_t>(m.cols()));
  for (std::size_t k = 0; k < m.data().size(); ++k) {
    const float v = static_cast<float>(m.data()[k]);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NonFiniteValue,
                  "value at row " + std::to_string(k / m.cols()) + " overflows 32-bit float");
    }
    write_u32_le(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

void save_features(const FeatureMatrix& m, const std::filesystem::path& path) {
  const auto bytes = encode_features_binary(m);
  write_text_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::vector<std::size_t> parse_labels(std::string_view text, std::optional<std::size_t> num_classes,
                                      CsvOptions csv) {
  std::vector<std::size_t> labels;
  for (const auto& [lineno, raw] : split_lines(text, csv.skip_header)) {
    // A single-column CSV may still carry a trailing comma.
    std::string_view field = trim(raw.substr(0, raw.find(',')));
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw Error(ErrorKind::MalformedCsv, "line " + std::to_string(lineno) + ": '" + std::string(field) + "'");
    }
    if (value < 0) {
      throw Error(ErrorKind::NegativeLabel, "line " + std::to_string(lineno) + ": " + std::to_string(value));
    }
    if (num_classes && static_cast<unsigned long long>(value) >= *num_classes) {
      throw Error(ErrorKind::LabelOutOfRange, "line " + std::to_string(lineno) + ": label " +
                                                  std::to_string(value) + " with " +
                                                  std::to_string(*num_classes) + " classes");
    }
    labels.push_back(static_cast<std::size_t>(value));
  }
  return labels;
}

std::vector<std::size_t> load_labels(const std::filesystem::path& path, std::optional<std::size_t> num_classes,
                                     CsvOptions csv) {
  return parse_labels(read_text_file(path), num_classes, csv);
}

void save_labels(std::span<const std::size_t> labels, const std::filesystem::path& path) {
  std::string text;
  for (std::size_t y : labels) {
    text += std::to_string(y);
    text += '\n';
  }
  write_text_file(path, text);
}

LabeledDataset::LabeledDataset(FeatureMatrix features, std::vector<std::size_t> labels,
                               std::optional<std::size_t> num_classes)
    : features_(std::move(features)), labels_(std::move(labels)), num_classes_(0) {
  if (labels_.size() != features_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, std::to_string(labels_.size()) + " labels for " +
                                                  std::to_string(features_.rows()) + " feature rows");
  }
  const std::size_t max_label = *std::max_element(labels_.begin(), labels_.end());
  num_classes_ = num_classes.value_or(max_label + 1);
  if (max_label >= num_classes_) {
    throw Error(ErrorKind::LabelOutOfRange,
                "label " + std::to_string(max_label) + " with " + std::to_string(num_classes_) + " classes");
  }
  present_.insert(labels_.begin(), labels_.end());
}

}  // namespace pot
