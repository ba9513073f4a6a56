#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "radex/cam.hpp"
#include "radex/feature_matrix.hpp"
#include "radex/features.hpp"
#include "radex/json_schema.hpp"
#include "radex/png_io.hpp"
#include "radex/tensor_io.hpp"
#include "synth.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run(const fs::path& dir, const std::string& args) {
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(RADEX_CLI_PATH) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("radex_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

const char* kSmallConfig =
    "ng = 32\n"
    "cv.k = 3\n"
    "cv.repeats = 2\n"
    "cv.seed = 11\n"
    "rf.n_estimators = 20\n"
    "rf.seed = 11\n"
    "sfs.k_max = 3\n"
    "sfs.patience = 1\n";

}  // namespace

TEST_CASE("extract: deterministic output, golden fixture") {
  TempDir dir("extract");
  const auto manifest = synth::write_png_dataset(dir.path / "data", 3, 24, 99);

  const auto r1 = run(dir.path, "extract --manifest " + manifest.string() +
                                    " --out " + (dir.path / "a.csv").string());
  REQUIRE(r1.exit_code == 0);
  const auto r2 = run(dir.path, "extract --manifest " + manifest.string() +
                                    " --out " + (dir.path / "b.csv").string());
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(dir.path / "a.csv") == slurp(dir.path / "b.csv"));

  // serial and parallel extraction produce identical bytes
  const auto rs = run(dir.path, "--jobs 1 extract --manifest " +
                                    manifest.string() + " --out " +
                                    (dir.path / "serial.csv").string());
  const auto rp = run(dir.path, "--jobs 4 extract --manifest " +
                                    manifest.string() + " --out " +
                                    (dir.path / "parallel.csv").string());
  REQUIRE(rs.exit_code == 0);
  REQUIRE(rp.exit_code == 0);
  CHECK(slurp(dir.path / "serial.csv") == slurp(dir.path / "a.csv"));
  CHECK(slurp(dir.path / "parallel.csv") == slurp(dir.path / "a.csv"));

  // one row per manifest sample, feature count from the dictionary
  const auto m = radex::tabular::read_feature_csv(dir.path / "a.csv");
  CHECK(m.n_samples() == 6);
  CHECK(m.columns() == radex::radiomics::feature_names());
  REQUIRE(m.labels().has_value());

  // golden file committed after auditing unit-level values
  const auto golden = fs::path(RADEX_GOLDEN_DIR) / "golden_extract.csv";
  if (fs::exists(golden)) CHECK(slurp(dir.path / "a.csv") == slurp(golden));
}

TEST_CASE("extract: missing mask aborts naming the sample") {
  TempDir dir("extract_err");
  const auto manifest = synth::write_png_dataset(dir.path / "data", 2, 24, 7);
  fs::remove(dir.path / "data" / "case1_mask.png");

  const auto r = run(dir.path, "extract --manifest " + manifest.string() +
                                   " --out " + (dir.path / "x.csv").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("case1") != std::string::npos);
}

TEST_CASE("extract: --skip-errors logs and continues") {
  TempDir dir("extract_skip");
  const auto manifest = synth::write_png_dataset(dir.path / "data", 2, 24, 7);
  // corrupt one mask so extraction (not manifest validation) fails
  write_file(dir.path / "data" / "case1_mask.png", "not a png");

  const auto r =
      run(dir.path, "--skip-errors extract --manifest " + manifest.string() +
                        " --out " + (dir.path / "x.csv").string());
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("case1") != std::string::npos);
  const auto m = radex::tabular::read_feature_csv(dir.path / "x.csv");
  CHECK(m.n_samples() == 3);
}

TEST_CASE("preprocess: provenance lists nzv and correlated drops") {
  TempDir dir("preprocess");
  // constant column, duplicated pair, independent survivor
  std::ostringstream csv;
  csv << "sample_id,a,b,c,d\n";
  radex::Rng rng(3);
  for (int s = 0; s < 30; ++s) {
    const double v = rng.normal(), w = rng.normal();
    csv << "s" << s << ",7," << v << "," << v << "," << w << "\n";
  }
  write_file(dir.path / "f.csv", csv.str());

  const auto r = run(dir.path,
                     "preprocess --features " + (dir.path / "f.csv").string() +
                         " --out " + (dir.path / "out.csv").string() +
                         " --provenance " + (dir.path / "prov.json").string());
  REQUIRE(r.exit_code == 0);

  const auto prov = nlohmann::json::parse(slurp(dir.path / "prov.json"));
  bool saw_nzv = false, saw_corr = false;
  for (const auto& d : prov.at("dropped")) {
    if (d.at("name") == "a") saw_nzv = d.at("reason") == "nzv";
    const std::string reason = d.at("reason").get<std::string>();
    if (reason.rfind("correlated_with:", 0) == 0) saw_corr = true;
  }
  CHECK(saw_nzv);
  CHECK(saw_corr);

  const auto out = radex::tabular::read_feature_csv(dir.path / "out.csv");
  CHECK(out.n_features() == 2);  // one of b/c plus d
}

TEST_CASE("train, predict, select: contracts and failure modes") {
  TempDir dir("train");
  write_file(dir.path / "config.txt", kSmallConfig);
  radex::tabular::write_feature_csv(dir.path / "f.csv",
                                    synth::separable_dataset(36, 3, 21));

  const std::string base = "--config " + (dir.path / "config.txt").string();
  const auto train = run(
      dir.path, base + " train --features " + (dir.path / "f.csv").string() +
                    " --model-out " + (dir.path / "model.json").string() +
                    " --report-out " + (dir.path / "report.json").string());
  REQUIRE(train.exit_code == 0);

  const auto report = nlohmann::json::parse(slurp(dir.path / "report.json"));
  CHECK(report.at("pooled").at("accuracy").at("mean").get<double>() >= 0.9);

  // the model document conforms to its shipped schema
  const auto model_doc = nlohmann::json::parse(slurp(dir.path / "model.json"));
  const auto model_schema = nlohmann::json::parse(
      slurp(fs::path(RADEX_DOCS_DIR) / "forest_model.schema.json"));
  CHECK(radex::json_schema_violations(model_doc, model_schema).empty());

  // different seed -> different model bytes, same schema
  const auto train2 = run(
      dir.path, base + " --seed 999 train --features " +
                    (dir.path / "f.csv").string() + " --model-out " +
                    (dir.path / "model2.json").string() + " --report-out " +
                    (dir.path / "report2.json").string());
  REQUIRE(train2.exit_code == 0);
  CHECK(slurp(dir.path / "model.json") != slurp(dir.path / "model2.json"));

  const auto predict = run(
      dir.path, "predict --model " + (dir.path / "model.json").string() +
                    " --features " + (dir.path / "f.csv").string() +
                    " --out " + (dir.path / "pred.csv").string());
  REQUIRE(predict.exit_code == 0);
  CHECK(slurp(dir.path / "pred.csv").find("sample_id,probability") == 0);

  // single-class input is a numeric/degenerate error (exit 3)
  auto single = synth::separable_dataset(20, 1, 5);
  std::vector<int> ones(single.n_samples(), 1);
  radex::tabular::write_feature_csv(
      dir.path / "single.csv",
      radex::tabular::FeatureMatrix::create(single.sample_ids(),
                                            single.columns(), single.values(),
                                            ones));
  const auto bad = run(
      dir.path, base + " train --features " + (dir.path / "single.csv").string() +
                    " --model-out " + (dir.path / "m.json").string() +
                    " --report-out " + (dir.path / "r.json").string());
  CHECK(bad.exit_code == 3);
  CHECK(bad.err.find("both classes") != std::string::npos);

  const auto select = run(
      dir.path, base + " select --features " + (dir.path / "f.csv").string() +
                    " --out " + (dir.path / "sel.json").string() +
                    " --features-out " + (dir.path / "sel.csv").string());
  REQUIRE(select.exit_code == 0);
  const auto sel = nlohmann::json::parse(slurp(dir.path / "sel.json"));
  CHECK(sel.at("chosen").size() >= 1);
  CHECK(sel.at("chosen").at(0) == "signal");
  const auto reduced = radex::tabular::read_feature_csv(dir.path / "sel.csv");
  CHECK(reduced.n_features() == sel.at("chosen").size());
}

TEST_CASE("explain: report, modes, and alignment errors") {
  TempDir dir("explain");
  const auto planted = synth::planted_correlation_dataset(60, 4, 6, 2, 31);

  // rename radiomic columns so grouping resolves
  const std::vector<std::string> names{
      "original_firstorder_Energy", "waveletLL_firstorder_Energy",
      "original_glcm_Contrast", "waveletHH_ngtdm_Busyness"};
  auto radiomic = radex::tabular::FeatureMatrix::create(
      planted.radiomic.sample_ids(), names, planted.radiomic.values());
  radex::tabular::write_feature_csv(dir.path / "r.csv", radiomic);
  radex::tabular::write_feature_csv(dir.path / "d.csv", planted.deep);

  const auto r = run(
      dir.path, "explain --radiomic " + (dir.path / "r.csv").string() +
                    " --deep " + (dir.path / "d.csv").string() + " --out " +
                    (dir.path / "exp.json").string() + " --csv-out " +
                    (dir.path / "exp.csv").string() +
                    " --provenance resnet50:avgpool");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(slurp(dir.path / "exp.json"));
  CHECK(doc.at("kind") == "deep_feature_explanation");
  CHECK(doc.at("deep_provenance") == "resnet50:avgpool");
  CHECK(doc.at("thresholds").size() == 4);
  CHECK(slurp(dir.path / "exp.csv").find("kind,name,base,source") == 0);

  // determinism
  const auto r2 = run(dir.path,
                      "explain --radiomic " + (dir.path / "r.csv").string() +
                          " --deep " + (dir.path / "d.csv").string() +
                          " --out " + (dir.path / "exp2.json").string() +
                          " --provenance resnet50:avgpool");
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(dir.path / "exp.json") == slurp(dir.path / "exp2.json"));

  // absolute counts dominate signed counts featurewise
  write_file(dir.path / "abs.txt", "mode = absolute\n");
  const auto ra = run(dir.path,
                      "--config " + (dir.path / "abs.txt").string() +
                          " explain --radiomic " + (dir.path / "r.csv").string() +
                          " --deep " + (dir.path / "d.csv").string() +
                          " --out " + (dir.path / "expa.json").string());
  REQUIRE(ra.exit_code == 0);
  const auto da = nlohmann::json::parse(slurp(dir.path / "expa.json"));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t t = 0; t < 4; ++t)
      CHECK(da.at("per_feature").at(i).at("counts").at(t).get<std::size_t>() >=
            doc.at("per_feature").at(i).at("counts").at(t).get<std::size_t>());

  // mismatched sample ids
  auto wrong = radex::tabular::FeatureMatrix::create(
      planted.deep.sample_ids(), planted.deep.columns(), planted.deep.values());
  std::vector<std::string> ids = wrong.sample_ids();
  std::swap(ids[0], ids[1]);
  radex::tabular::write_feature_csv(
      dir.path / "wrong.csv",
      radex::tabular::FeatureMatrix::create(ids, wrong.columns(),
                                            wrong.values()));
  const auto bad = run(dir.path,
                       "explain --radiomic " + (dir.path / "r.csv").string() +
                           " --deep " + (dir.path / "wrong.csv").string() +
                           " --out " + (dir.path / "x.json").string());
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("sample ids") != std::string::npos);
}

TEST_CASE("cam: methods, sidecars, discrepancy") {
  TempDir dir("cam");

  // rank-1 stack: eigen output equals the normalized pattern
  radex::Rng rng(41);
  radex::cam::TensorStack stack;
  stack.k = 3;
  stack.h = 4;
  stack.w = 4;
  std::vector<double> pattern(16);
  for (double& v : pattern) v = rng.range(0.0, 1.0);
  for (double c : {1.0, 0.5, 2.0})
    for (double v : pattern) stack.data.push_back(c * v);
  radex::cam::write_atns(dir.path / "act.atns", stack);

  const auto r = run(dir.path, "cam --activations " +
                                   (dir.path / "act.atns").string() +
                                   " --method eigen --out-dir " +
                                   (dir.path / "out1").string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(fs::exists(dir.path / "out1" / "eigen.png"));
  const auto map =
      radex::cam::read_saliency_sidecar(dir.path / "out1" / "eigen.atns");
  double peak = 0;
  for (double v : pattern) peak = std::max(peak, v);
  for (int i = 0; i < 16; ++i)
    CHECK(map.values[i] ==
          doctest::Approx(pattern[i] / peak).epsilon(1e-5));

  // write the expected pattern through the same exporter: identical PNG
  radex::cam::SaliencyMap expected{4, 4, {}};
  for (double v : pattern) expected.values.push_back(v / peak);
  // sidecar payload is float32; round-trip the values the same way
  for (double& v : expected.values) v = static_cast<float>(v);
  radex::cam::write_saliency(dir.path / "expected.png",
                             dir.path / "expected.atns", expected);
  CHECK(slurp(dir.path / "out1" / "eigen.png") ==
        slurp(dir.path / "expected.png"));

  // grad on the hand-derived 2x2 fixture
  radex::cam::TensorStack a2{2, 2, 2, {1, 0, 0, 0, 0, 0, 0, 1}};
  radex::cam::TensorStack g2{2, 2, 2, {1, 1, 0, 0, 0, 0, -1, -1}};
  radex::cam::write_atns(dir.path / "a2.atns", a2);
  radex::cam::write_atns(dir.path / "g2.atns", g2);
  const auto rg = run(dir.path, "cam --activations " +
                                    (dir.path / "a2.atns").string() +
                                    " --method grad --gradients " +
                                    (dir.path / "g2.atns").string() +
                                    " --out-dir " + (dir.path / "out2").string());
  REQUIRE(rg.exit_code == 0);
  const auto gmap =
      radex::cam::read_saliency_sidecar(dir.path / "out2" / "grad.atns");
  CHECK(gmap.values == std::vector<double>{1, 0, 0, 0});

  // grad and score with an equivalent weighting agree exactly
  std::ofstream(dir.path / "w.csv") << "0.5\n-0.5\n";
  const auto rb = run(
      dir.path,
      "cam --activations " + (dir.path / "a2.atns").string() +
          " --method grad --gradients " + (dir.path / "g2.atns").string() +
          " --method score --weights " + (dir.path / "w.csv").string() +
          " --out-dir " + (dir.path / "out3").string());
  REQUIRE(rb.exit_code == 0);
  const auto disc = nlohmann::json::parse(
      slurp(dir.path / "out3" / "discrepancy.json"));
  CHECK(disc.at("pairs").at(0).at("pearson").get<double>() ==
        doctest::Approx(1.0));
  CHECK(disc.at("pairs").at(0).at("top_q_jaccard").get<double>() == 1.0);

  // score requires weights
  const auto bad = run(dir.path, "cam --activations " +
                                     (dir.path / "a2.atns").string() +
                                     " --method score --out-dir " +
                                     (dir.path / "out4").string());
  CHECK(bad.exit_code == 2);
}

TEST_CASE("report: schema validation and dictionary export") {
  TempDir dir("report");
  const auto planted = synth::planted_correlation_dataset(30, 2, 3, 1, 51);
  const std::vector<std::string> names{"original_firstorder_Energy",
                                       "waveletLL_firstorder_Energy"};
  radex::tabular::write_feature_csv(
      dir.path / "r.csv",
      radex::tabular::FeatureMatrix::create(planted.radiomic.sample_ids(),
                                            names, planted.radiomic.values()));
  radex::tabular::write_feature_csv(dir.path / "d.csv", planted.deep);
  REQUIRE(run(dir.path, "explain --radiomic " + (dir.path / "r.csv").string() +
                            " --deep " + (dir.path / "d.csv").string() +
                            " --out " + (dir.path / "exp.json").string())
              .exit_code == 0);

  const auto schema = fs::path(RADEX_DOCS_DIR) / "explain_report.schema.json";
  const auto ok = run(dir.path, "report --input " +
                                    (dir.path / "exp.json").string() +
                                    " --schema " + schema.string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("schema: ok") != std::string::npos);
  CHECK(ok.out.find("firstorder_Energy") != std::string::npos);

  // corrupt document fails validation with exit 2
  auto doc = nlohmann::json::parse(slurp(dir.path / "exp.json"));
  doc.erase("grouped");
  write_file(dir.path / "broken.json", doc.dump(2));
  const auto bad = run(dir.path, "report --input " +
                                     (dir.path / "broken.json").string() +
                                     " --schema " + schema.string());
  CHECK(bad.exit_code == 2);

  // dictionary export matches the committed table byte for byte
  const auto dict = run(dir.path, "report --dictionary " +
                                      (dir.path / "dict.csv").string());
  CHECK(dict.exit_code == 0);
  const auto committed = fs::path(RADEX_DOCS_DIR) / "feature_dictionary.csv";
  if (fs::exists(committed))
    CHECK(slurp(dir.path / "dict.csv") == slurp(committed));
}

TEST_CASE("config: unknown keys rejected with exit 2") {
  TempDir dir("config");
  write_file(dir.path / "bad.txt", "nonsense = 1\n");
  radex::tabular::write_feature_csv(dir.path / "f.csv",
                                    synth::separable_dataset(20, 1, 5));
  const auto r = run(dir.path,
                     "--config " + (dir.path / "bad.txt").string() +
                         " preprocess --features " + (dir.path / "f.csv").string() +
                         " --out " + (dir.path / "o.csv").string() +
                         " --provenance " + (dir.path / "p.json").string());
  CHECK(r.exit_code == 2);
}
