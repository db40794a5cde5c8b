#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <filesystem>
#include <string>

#include "pot/errors.hpp"
#include "pot/ingest.hpp"
#include "pot/random.hpp"
#include "support/errors.hpp"

namespace pot {
namespace {

namespace fs = std::filesystem;
using testing::kind_of;

std::vector<std::byte> header(std::uint32_t rows, std::uint32_t cols, std::uint8_t version = 1) {
  std::vector<std::byte> b = {std::byte{'P'}, std::byte{'O'}, std::byte{'T'}, std::byte{'F'}, std::byte{version}};
  for (std::uint32_t v : {rows, cols})
    for (int s = 0; s < 32; s += 8) b.push_back(static_cast<std::byte>((v >> s) & 0xff));
  return b;
}

void append_f32(std::vector<std::byte>& b, float v) {
  const auto u = std::bit_cast<std::uint32_t>(v);
  for (int s = 0; s < 32; s += 8) b.push_back(static_cast<std::byte>((u >> s) & 0xff));
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("pot_ingest_" + name); }

TEST(Ingest, ParsesHandBuiltBinary) {
  auto bytes = header(2, 2);
  for (float v : {0.f, 0.f, 1.f, 1.f}) append_f32(bytes, v);
  const FeatureMatrix m = parse_features_binary(bytes);
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 2u);
  EXPECT_EQ(m(0, 0), 0.0);
  EXPECT_EQ(m(0, 1), 0.0);
  EXPECT_EQ(m(1, 0), 1.0);
  EXPECT_EQ(m(1, 1), 1.0);
}

TEST(Ingest, OneByOneFileIsSeventeenBytes) {
  const FeatureMatrix m(1, 1, {42.0});
  const auto bytes = encode_features_binary(m);
  // 4 magic + 1 version + 4 rows + 4 cols, then a single f32.
  ASSERT_EQ(bytes.size(), 17u);
  EXPECT_EQ(std::memcmp(bytes.data(), "POTF", 4), 0);
  EXPECT_EQ(static_cast<int>(bytes[4]), 1);
  float v;
  std::memcpy(&v, bytes.data() + 13, 4);
  EXPECT_EQ(v, 42.0f);
}

TEST(Ingest, EmptyMatrixRejectedAtConstruction) {
  EXPECT_EQ(kind_of([] { FeatureMatrix(0, 3, {}); }), ErrorKind::DimensionMismatch);
}

TEST(Ingest, BinaryHeaderErrors) {
  auto bad_magic = header(1, 1);
  bad_magic[0] = std::byte{'X'};
  append_f32(bad_magic, 1.f);
  EXPECT_EQ(kind_of([&] { parse_features_binary(bad_magic); }), ErrorKind::MalformedHeader);

  auto bad_version = header(1, 1, 2);
  append_f32(bad_version, 1.f);
  EXPECT_EQ(kind_of([&] { parse_features_binary(bad_version); }), ErrorKind::MalformedHeader);

  auto truncated = header(1, 1);
  truncated.resize(7);
  EXPECT_EQ(kind_of([&] { parse_features_binary(truncated); }), ErrorKind::MalformedHeader);

  auto zero_rows = header(0, 3);
  EXPECT_EQ(kind_of([&] { parse_features_binary(zero_rows); }), ErrorKind::MalformedHeader);
}

TEST(Ingest, BinaryPayloadLengthMustMatchHeader) {
  auto short_payload = header(2, 2);
  for (float v : {0.f, 0.f, 1.f}) append_f32(short_payload, v);
  EXPECT_EQ(kind_of([&] { parse_features_binary(short_payload); }), ErrorKind::DimensionMismatch);
}

TEST(Ingest, BinaryRejectsNonFiniteWithOffset) {
  auto bytes = header(2, 1);
  append_f32(bytes, 1.f);
  append_f32(bytes, std::numeric_limits<float>::infinity());
  try {
    parse_features_binary(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFiniteValue);
    EXPECT_NE(std::string(e.what()).find("byte offset 17"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos) << e.what();
  }
}

TEST(Ingest, ParsesCsv) {
  const FeatureMatrix m = parse_features_csv("0.5,0.5\n1.0,2.0");
  ASSERT_EQ(m.rows(), 2u);
  ASSERT_EQ(m.cols(), 2u);
  EXPECT_EQ(m(0, 0), 0.5);
  EXPECT_EQ(m(0, 1), 0.5);
  EXPECT_EQ(m(1, 0), 1.0);
  EXPECT_EQ(m(1, 1), 2.0);
}

TEST(Ingest, CsvHeaderSkipAndCrlf) {
  const FeatureMatrix m = parse_features_csv("x,y\r\n1, 2\r\n3,4\r\n\r\n", CsvOptions{true});
  ASSERT_EQ(m.rows(), 2u);
  EXPECT_EQ(m(1, 1), 4.0);
  EXPECT_EQ(kind_of([] { parse_features_csv("x,y\n1,2"); }), ErrorKind::MalformedCsv);
}

TEST(Ingest, CsvNanIsRejectedAtRowZero) {
  try {
    parse_features_csv("nan,1\n2,3");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFiniteValue);
    EXPECT_NE(std::string(e.what()).find("row 0"), std::string::npos);
  }
  EXPECT_EQ(kind_of([] { parse_features_csv("1,inf"); }), ErrorKind::NonFiniteValue);
  EXPECT_EQ(kind_of([] { parse_features_csv("1,1e999"); }), ErrorKind::NonFiniteValue);
}

TEST(Ingest, CsvRaggedRows) {
  EXPECT_EQ(kind_of([] { parse_features_csv("1,2\n3"); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([] { parse_features_csv(""); }), ErrorKind::DimensionMismatch);
}

TEST(Ingest, Labels) {
  EXPECT_EQ(parse_labels("0\n1\n0"), (std::vector<std::size_t>{0, 1, 0}));
  EXPECT_EQ(kind_of([] { parse_labels("2", 2); }), ErrorKind::LabelOutOfRange);
  EXPECT_EQ(kind_of([] { parse_labels("-1"); }), ErrorKind::NegativeLabel);
  EXPECT_EQ(kind_of([] { parse_labels("1.5"); }), ErrorKind::MalformedCsv);
  EXPECT_EQ(parse_labels("label\n3,\n4\n", std::nullopt, CsvOptions{true}), (std::vector<std::size_t>{3, 4}));
}

TEST(Ingest, LabeledDatasetChecksLengths) {
  FeatureMatrix x(2, 1, {0.0, 1.0});
  EXPECT_EQ(kind_of([&] { LabeledDataset(x, {0}); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([&] { LabeledDataset(x, {0, 3}, 2); }), ErrorKind::LabelOutOfRange);
  const LabeledDataset ds(x, {0, 2}, 4);
  EXPECT_EQ(ds.num_classes(), 4u);
  EXPECT_EQ(ds.present_classes(), (std::set<std::size_t>{0, 2}));
}

TEST(Ingest, FileRoundTripIsBitExact) {
  // Property: any f32-representable matrix survives save -> load unchanged.
  CounterRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 1 + rng.below(9), cols = 1 + rng.below(9);
    std::vector<double> data(rows * cols);
    for (double& v : data) v = static_cast<double>(static_cast<float>(rng.normal() * 1e3));
    const FeatureMatrix m(rows, cols, data);
    const fs::path p = temp_file("roundtrip.potf");
    save_features(m, p);
    const FeatureMatrix back = load_features(p, FeatureFormat::Binary);
    ASSERT_EQ(back, m);
    const auto a = encode_features_binary(back);
    ASSERT_EQ(a, encode_features_binary(m));
  }
}

TEST(Ingest, MissingFileIsIoFailure) {
  EXPECT_EQ(kind_of([] { load_features("/nonexistent/x.potf", FeatureFormat::Binary); }), ErrorKind::IoFailure);
  EXPECT_EQ(error_category(ErrorKind::IoFailure), ErrorCategory::Io);
}

TEST(Ingest, FormatFromExtension) {
  EXPECT_EQ(format_from_extension("a/b.CSV"), FeatureFormat::Csv);
  EXPECT_EQ(format_from_extension("a/b.potf"), FeatureFormat::Binary);
  EXPECT_EQ(format_from_extension("scores.txt"), FeatureFormat::Csv);
}

}  // namespace
}  // namespace pot
