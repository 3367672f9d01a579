#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "cogmorf/cogmorf.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("cogmorf_capi_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string name(const std::string& n) const { return (path / n).string(); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  cmorf_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("defaults and names") {
  cmorf_train_params p;
  cmorf_train_params_default(&p);
  CHECK(p.alpha == 0.01);
  CHECK(p.edit_weight == 10.0);
  CHECK(p.edit_mode == CMORF_EDIT_FULL);
  CHECK(std::strcmp(cmorf_status_name(CMORF_ERR_FORMAT), "format") == 0);
  CHECK(std::strlen(cmorf_version()) > 0);
}

TEST_CASE("train, save, load, segment") {
  TempDir tmp;
  const auto a = tmp.file("a.txt", "talo talossa talosta\ntalo kissa kissassa\ntalossa talo\n");
  const auto b = tmp.file("b.txt", "talu talus talust\ntalu kass kassis\ntalus talu\n");
  const auto cog = tmp.file("cog.tsv", "talo\ttalu\t3\ntalossa\ttalus\t2\n");

  cmorf_train_params p;
  cmorf_train_params_default(&p);
  cmorf_model* model = nullptr;
  REQUIRE(cmorf_model_train(a.c_str(), b.c_str(), cog.c_str(), &p, &model) == CMORF_OK);
  double cost = 0, verified = 0;
  CHECK(cmorf_model_total_cost(model, &cost) == CMORF_OK);
  CHECK(cmorf_model_verify(model, &verified) == CMORF_OK);
  CHECK(verified == doctest::Approx(cost).epsilon(1e-9));

  char* report = nullptr;
  CHECK(cmorf_model_report_json(model, &report) == CMORF_OK);
  CHECK(take(report).find("\"epochs\"") != std::string::npos);

  const auto path = tmp.name("m.model");
  REQUIRE(cmorf_model_save(model, path.c_str()) == CMORF_OK);
  cmorf_model* loaded = nullptr;
  REQUIRE(cmorf_model_load(path.c_str(), &loaded) == CMORF_OK);
  const auto path2 = tmp.name("m2.model");
  REQUIRE(cmorf_model_save(loaded, path2.c_str()) == CMORF_OK);
  CHECK(slurp(path) == slurp(path2));
  CHECK(slurp(path).find("alpha\t0.01\n") != std::string::npos);

  char* out = nullptr;
  REQUIRE(cmorf_segment_line(loaded, CMORF_LANG_A, "@@", "talossa  kissassa", &out) == CMORF_OK);
  const std::string seg = take(out);
  REQUIRE(cmorf_unjoin_line("@@", seg.c_str(), &out) == CMORF_OK);
  CHECK(take(out) == "talossa  kissassa");

  REQUIRE(cmorf_segment_source_line(loaded, loaded, "@@", "<to_et> talo", &out) == CMORF_OK);
  CHECK(take(out).rfind("<to_et> ", 0) == 0);

  REQUIRE(cmorf_report_edits(loaded, 5, 0, &out) == CMORF_OK);
  take(out);

  cmorf_model_free(model);
  cmorf_model_free(loaded);
}

TEST_CASE("errors carry status codes and messages") {
  cmorf_model* model = nullptr;
  CHECK(cmorf_model_load("/nonexistent/file.model", &model) == CMORF_ERR_IO);
  CHECK(std::strlen(cmorf_last_error()) > 0);
  CHECK(model == nullptr);

  TempDir tmp;
  const auto bad = tmp.file("bad.model", "#cogmorf-model\nversion\t1\n[LEXICON-B]\n");
  CHECK(cmorf_model_load(bad.c_str(), &model) == CMORF_ERR_FORMAT);
  CHECK(std::string(cmorf_last_error()).find("line") != std::string::npos);

  char* out = nullptr;
  CHECK(cmorf_prefix_tag("en", "fi,et", "hello", &out) == CMORF_ERR_INVALID_ARGUMENT);
  REQUIRE(cmorf_prefix_tag("fi", "fi,et", "hello", &out) == CMORF_OK);
  CHECK(take(out) == "<to_fi> hello");
  CHECK(cmorf_segment_line(nullptr, CMORF_LANG_A, "@@", "x", &out) == CMORF_ERR_INVALID_ARGUMENT);

  cmorf_train_params p;
  cmorf_train_params_default(&p);
  const auto a = tmp.file("a.txt", "talo\n");
  const auto b = tmp.file("b.txt", "talu\n");
  const auto cog = tmp.file("cog.tsv", "kala\tkala\t3\n");
  CHECK(cmorf_model_train(a.c_str(), b.c_str(), cog.c_str(), &p, &model) ==
        CMORF_ERR_INVALID_ARGUMENT);
  p.skip_missing_pairs = 1;
  REQUIRE(cmorf_model_train(a.c_str(), b.c_str(), cog.c_str(), &p, &model) == CMORF_OK);
  cmorf_model_free(model);
}

TEST_CASE("cognate extraction and BPE through the C API") {
  TempDir tmp;
  const auto pairs = tmp.file("pairs.tsv", "kuuluvuus\tkuuluvus\t3\ntalo\ttalu\t5\n");
  size_t kept = 0;
  REQUIRE(cmorf_extract_cognates(pairs.c_str(), tmp.name("out.tsv").c_str(), 2, 4, &kept) == CMORF_OK);
  CHECK(kept == 1);
  CHECK(slurp(tmp.name("out.tsv")) == "kuuluvuus\tkuuluvus\t3\n");

  const auto c1 = tmp.file("c1.tsv", "töö-aeg\t5\ntalo\t3\n");
  const auto c2 = tmp.file("c2.tsv", "tööaeg\t1\n");
  const char* paths[] = {c1.c_str(), c2.c_str()};
  size_t merges = 0;
  int truncated = 0;
  REQUIRE(cmorf_bpe_train(paths, 2, 20, tmp.name("bpe.txt").c_str(), &merges, &truncated) == CMORF_OK);
  CHECK(merges > 0);
  cmorf_bpe* bpe = nullptr;
  REQUIRE(cmorf_bpe_load(tmp.name("bpe.txt").c_str(), &bpe) == CMORF_OK);
  char* out = nullptr;
  REQUIRE(cmorf_bpe_apply_line(bpe, "@@", "töö-aeg talo", &out) == CMORF_OK);
  const std::string seg = take(out);
  CHECK(seg.find("@@ -@@ ") != std::string::npos);
  REQUIRE(cmorf_unjoin_line("@@", seg.c_str(), &out) == CMORF_OK);
  CHECK(take(out) == "töö-aeg talo");
  cmorf_bpe_free(bpe);
}
