#include "abin/heightfield.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace abin {
namespace {

const std::string kHeader2x2 =
    "BYTEORDER M\nNROWS 2\nNCOLS 2\nNBITS 16\nULXMAP -179.5\nULYMAP 89.5\nXDIM 1.0\nYDIM 1.0\nNODATA -9999\n";

std::string bytes(std::initializer_list<int> b) {
  std::string s;
  for (int v : b) s.push_back(static_cast<char>(v));
  return s;
}

TEST(HeightField, RawDemDecodesBigEndianAndNodata) {
  const HeightField hf = decode_raw_dem(kHeader2x2, bytes({0x00, 0x00, 0x00, 0x64, 0xFF, 0x9C, 0xD8, 0xF1}));
  ASSERT_EQ(hf.rows, 2);
  ASSERT_EQ(hf.cols, 2);
  EXPECT_EQ(hf.samples, (std::vector<double>{0, 100, -100, 0}));
  EXPECT_NEAR(hf.lat_bounds.hi, 89.5 * kPi / 180, 1e-15);
  EXPECT_NEAR(hf.lat_bounds.lo, 88.5 * kPi / 180, 1e-15);
  EXPECT_NEAR(hf.lon_bounds.lo, -179.5 * kPi / 180, 1e-15);
  EXPECT_NEAR(hf.lat_of_row(0), hf.lat_bounds.hi, 0.0);
}

TEST(HeightField, RawDemClampsToAltitudeRange) {
  // 0x7FFF = 32767 and 0x8000 = -32768.
  const HeightField hf = decode_raw_dem(kHeader2x2, bytes({0x7F, 0xFF, 0x80, 0x00, 0x00, 0x01, 0x00, 0x02}));
  EXPECT_EQ(hf.samples, (std::vector<double>{kMaxHeight, kMinHeight, 1, 2}));
}

TEST(HeightField, RawDemSizeMismatchNamesFields) {
  try {
    (void)decode_raw_dem(kHeader2x2, std::string(12, '\0'));
    FAIL() << "expected IngestError";
  } catch (const IngestError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("6 samples"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'nrows'"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'ncols'"), std::string::npos) << msg;
  }
}

TEST(HeightField, HeaderErrorsNameTheField) {
  try {
    (void)decode_raw_dem("NROWS 2\nULXMAP 0\nULYMAP 0\nXDIM 1\nYDIM 1\n", bytes({0, 0, 0, 0}));
    FAIL() << "expected IngestError";
  } catch (const IngestError& e) {
    EXPECT_NE(std::string(e.what()).find("ncols"), std::string::npos) << e.what();
  }
  EXPECT_THROW((void)decode_raw_dem("BYTEORDER I\n" + kHeader2x2.substr(12), std::string(8, '\0')), IngestError);
  EXPECT_THROW((void)decode_raw_dem("nrows=2\nncols=x\nulxmap=0\nulymap=0\nxdim=1\nydim=1\n", std::string(8, '\0')),
               IngestError);
}

TEST(HeightField, PortableRoundTrip) {
  HeightField hf;
  hf.rows = 3;
  hf.cols = 4;
  hf.lat_bounds = {-0.5, 0.25};
  hf.lon_bounds = {-1.0, 2.0};
  hf.samples = {0, 1.5, -2.25, 8848, -430.5, 3, 4, 5, 6, 7, 8, 9};
  const HeightField back = decode_portable(encode_portable(hf));
  EXPECT_EQ(back.rows, 3);
  EXPECT_EQ(back.cols, 4);
  EXPECT_EQ(back.samples, hf.samples);
  EXPECT_NEAR(back.lat_bounds.lo, hf.lat_bounds.lo, 1e-14);
  EXPECT_NEAR(back.lat_bounds.hi, hf.lat_bounds.hi, 1e-14);
  EXPECT_NEAR(back.lon_bounds.lo, hf.lon_bounds.lo, 1e-14);
  EXPECT_NEAR(back.lon_bounds.hi, hf.lon_bounds.hi, 1e-14);
}

TEST(HeightField, PortableRejectsCorruptInput) {
  EXPECT_THROW((void)decode_portable("NOTMAGIC00000000"), IngestError);
  HeightField hf = synth_heightfield({SynthKind::Flat, 10.0, 0.1, 0.1, 8, 2, 2});
  std::string good = encode_portable(hf);
  EXPECT_THROW((void)decode_portable(good.substr(0, good.size() - 1)), IngestError);
  std::string big = good;
  big[15] = static_cast<char>(0x7f);
  EXPECT_THROW((void)decode_portable(big), IngestError);
  std::string bad_dtype = good;
  bad_dtype.replace(bad_dtype.find("float64"), 7, "float32");
  EXPECT_THROW((void)decode_portable(bad_dtype), IngestError);
}

TEST(HeightField, LoadFromDisk) {
  const auto dir = std::filesystem::temp_directory_path() / "abin_test_heightfield";
  std::filesystem::create_directories(dir);
  HeightField hf = synth_heightfield({SynthKind::Sinusoidal, 2000.0, 0.1, 0.1, 8, 5, 9});
  save_portable(hf, dir / "grid.abhf");
  EXPECT_EQ(load_heightfield(dir / "grid.abhf").samples, hf.samples);

  {
    std::ofstream(dir / "tile.dem", std::ios::binary) << bytes({0x00, 0x00, 0x00, 0x64, 0xFF, 0x9C, 0xD8, 0xF1});
    std::ofstream(dir / "tile.hdr") << kHeader2x2;
  }
  EXPECT_EQ(load_heightfield(dir / "tile.dem").samples, (std::vector<double>{0, 100, -100, 0}));
  EXPECT_THROW((void)load_heightfield(dir / "missing.dem"), IngestError);
  std::filesystem::remove_all(dir);
}

TEST(HeightField, SynthKinds) {
  const HeightField flat = synth_heightfield({SynthKind::Flat, 500.0});
  EXPECT_EQ(flat.rows, 513);
  EXPECT_EQ(flat.cols, 1025);
  for (double v : flat.samples) ASSERT_EQ(v, 500.0);

  const HeightField peak = synth_heightfield({SynthKind::SinglePeak, 8848.0});
  int nonzero = 0;
  for (int r = 0; r < peak.rows; ++r) {
    for (int c = 0; c < peak.cols; ++c) {
      if (peak.at(r, c) != 0.0) {
        ++nonzero;
        EXPECT_EQ(peak.at(r, c), 8848.0);
        EXPECT_NEAR(peak.lat_of_row(r), 0.1, kPi / 512);
        EXPECT_NEAR(peak.lon_of_col(c), 0.1, kPi / 512);
      }
    }
  }
  EXPECT_EQ(nonzero, 1);

  const HeightField sine = synth_heightfield({SynthKind::Sinusoidal, 2000.0});
  const auto [lo, hi] = std::minmax_element(sine.samples.begin(), sine.samples.end());
  EXPECT_GE(*lo, 0.0);
  EXPECT_LE(*hi, 2000.0);
  EXPECT_GT(*hi - *lo, 1900.0);
  EXPECT_THROW((void)synth_heightfield({SynthKind::Sinusoidal, 20000.0}), InvalidArgument);
  EXPECT_THROW((void)synth_heightfield({SynthKind::Flat, 0.0, 0.1, 0.1, 8, 1, 4}), InvalidArgument);
}

}  // namespace
}  // namespace abin
