#include <gtest/gtest.h>

#include <blockade_anyon/io.hpp>
#include <blockade_anyon/op_spec.hpp>
#include <blockade_anyon/spectra.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace blockade_anyon;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("blockade_anyon_io_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(CanonicalJson, SortedKeysAndFifteenDigits) {
  const json j = {{"b", 1.0 / 3.0}, {"a", {{"z", 1}, {"y", true}}}, {"c", "x"}};
  EXPECT_EQ(canonical_json(j), R"({"a":{"y":true,"z":1},"b":0.333333333333333,"c":"x"})");
}

TEST(CanonicalJson, IntegersAndSpecialValues) {
  EXPECT_EQ(canonical_json(json(std::uint64_t{1346269})), "1346269");
  EXPECT_EQ(canonical_json(json(-2.5)), "-2.5");
  EXPECT_EQ(canonical_json(json::array({1, 2})), "[1,2]");
}

TEST(SectorJson, RoundTrip) {
  for (auto [z0, zn] : kAllSectors) {
    const auto s = Sector::make(7, z0, zn);
    EXPECT_TRUE(sector_from_json(to_json(*s))->same_as(*s));
  }
}

TEST(OperatorExport, BitExactRoundTrip) {
  const auto s = Sector::make(8, BoundaryLabel::Tau, BoundaryLabel::Tau);
  for (const char* spec : {"pairproj:3", "charge", "otest", "window:2:5:tau", "flipx:4", "n:2"}) {
    const auto op = build_operator(s, spec);
    std::istringstream in(export_operator(op, {{"op", spec}}));
    const auto back = import_operator(in);
    EXPECT_TRUE(back.op.structurally_equal(op)) << spec;
    EXPECT_EQ(back.header.at("op"), spec);
    EXPECT_TRUE(back.op.sector()->same_as(*s));
  }
}

TEST(Csv, HeaderAndLineEndings) {
  const auto text = csv_table({"t", "v"}, {{0.0, 0.5}, {1.0, 1.0 / 3.0}});
  EXPECT_EQ(text, "t,v\n0,1\n0.5,0.333333333333333\n");
}

TEST(WriteReport, EmptyPayloadIsManifestOnly) {
  const auto dir = scratch_dir("empty");
  RunManifest m;
  m.command = "dimension";
  const auto files = write_report(dir, m, json::object());
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
  EXPECT_FALSE(std::filesystem::exists(dir / "payload.json"));
  std::filesystem::remove_all(dir);
}

TEST(WriteReport, ByteIdenticalRerun) {
  const auto a = scratch_dir("a");
  const auto b = scratch_dir("b");
  RunManifest m;
  m.command = "spectrum";
  m.parameters = {{"n", 4}, {"sector", "tt"}};
  m.master_seed = 7;
  const auto sp = eigensystem(golden_hamiltonian(Sector::make(4, BoundaryLabel::Tau, BoundaryLabel::Tau),
                                                 uniform_couplings(4)),
                              false);
  m.wall_clock_seconds = 0.1;
  write_report(a, m, to_json(sp), {{"spectrum.csv", spectrum_csv(sp)}});
  m.wall_clock_seconds = 0.2;
  write_report(b, m, to_json(sp), {{"spectrum.csv", spectrum_csv(sp)}});
  for (const char* f : {"manifest.json", "payload.json", "spectrum.csv"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  const auto csv = slurp(a / "spectrum.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);  // header plus 5 rows
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST(OpSpec, ParsesMiniLanguage) {
  const auto s = Sector::make(6, BoundaryLabel::Tau, BoundaryLabel::Tau);
  EXPECT_TRUE(build_operator(s, "zhat:2").structurally_equal(op_zhat(s, 2)));
  EXPECT_TRUE(build_operator(s, "pairproj:2").structurally_equal(pair_vacuum_projector(s, 2)));
  EXPECT_THROW(build_operator(s, "bogus:1"), ArgumentError);
  EXPECT_THROW(build_operator(s, "n:x"), ArgumentError);
}
