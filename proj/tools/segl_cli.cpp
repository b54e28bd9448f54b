// segl: texture feature extraction and classification from the command line.
//
//   segl extract  CORPUS -o features.csv
//   segl crossval --corpus CORPUS | --dataset features.csv
//   segl classify --dataset features.csv IMAGE
//   segl inspect  IMAGE --stage lbp|glcm|edge|features

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "segl/segl.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

template <auto Free>
struct Deleter {
  template <typename T>
  void operator()(T* p) const noexcept { Free(p); }
};
using Image = std::unique_ptr<segl_image, Deleter<segl_image_free>>;
using Matrix = std::unique_ptr<segl_matrix, Deleter<segl_matrix_free>>;
using Features = std::unique_ptr<segl_features, Deleter<segl_features_free>>;
using DatasetHandle = std::unique_ptr<segl_dataset, Deleter<segl_dataset_free>>;
using Report = std::unique_ptr<segl_report, Deleter<segl_report_free>>;
using CString = std::unique_ptr<char, Deleter<segl_string_free>>;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(segl_status status, const std::string& context) {
  if (status != SEGL_OK) throw Failure(context + ": " + segl_last_error());
}

Image load_image(const fs::path& path) {
  segl_image* raw = nullptr;
  check(segl_image_load_file(path.string().c_str(), &raw), "loading " + path.string());
  return Image(raw);
}

// Options shared by every command that runs the pipeline.
struct PipelineOptions {
  std::string approach = "segl";
  std::string directions = "0";
  int levels = 256;
  int distance = 1;
  std::string edge_output = "magnitude";

  segl_pipeline_config config() const {
    segl_pipeline_config cfg;
    segl_pipeline_config_init(&cfg);
    cfg.levels = levels;
    cfg.distance = distance;
    cfg.edge_output = edge_output == "binary" ? SEGL_EDGE_BINARY : SEGL_EDGE_MAGNITUDE;
    return cfg;
  }
};

void add_pipeline_options(CLI::App* cmd, PipelineOptions& opt, bool with_directions = true) {
  if (with_directions) {
    cmd->add_option("--directions", opt.directions,
                    "GLCM directions: 0, all, or a comma list of angles such as 0,90")
        ->capture_default_str();
  }
  cmd->add_option("--q", opt.levels, "gray levels of the co-occurrence matrix")
      ->check(CLI::Range(2, 256))
      ->capture_default_str();
  cmd->add_option("--distance", opt.distance, "co-occurrence pixel offset")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--edge-output", opt.edge_output, "Sobel stage output")
      ->check(CLI::IsMember({"magnitude", "binary"}))
      ->capture_default_str();
}

unsigned parse_directions(const std::string& text) {
  if (text == "all") return SEGL_DIRECTIONS_ALL;
  unsigned mask = 0;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int angle = -1;
    try {
      std::size_t used = 0;
      angle = std::stoi(item, &used);
      if (used != item.size()) angle = -1;
    } catch (const std::exception&) {
    }
    if (angle < 0 || angle > 315 || angle % 45 != 0) {
      throw CLI::ValidationError("--directions", "invalid angle '" + item + "'");
    }
    mask |= 1u << (angle / 45);
  }
  if (mask == 0) throw CLI::ValidationError("--directions", "no directions given");
  return mask;
}

segl_approach parse_approach(const std::string& name) {
  segl_approach a{};
  if (segl_parse_approach(name.c_str(), &a) != SEGL_OK) {
    throw CLI::ValidationError("--approach", segl_last_error());
  }
  return a;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

// ---------------------------------------------------------------------------
// Corpus extraction

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".pgm" || ext == ".pnm" || ext == ".ppm";
}

struct CorpusEntry {
  fs::path path;
  std::string label;
};

std::vector<CorpusEntry> discover(const fs::path& root) {
  if (!fs::is_directory(root)) throw Failure("corpus root is not a directory: " + root.string());
  std::vector<fs::path> label_dirs;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_directory()) label_dirs.push_back(e.path());
  }
  std::sort(label_dirs.begin(), label_dirs.end());
  if (label_dirs.size() < 2) {
    throw Failure("corpus " + root.string() + " needs at least two label subdirectories");
  }
  std::vector<CorpusEntry> entries;
  for (const auto& dir : label_dirs) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && is_image_file(e.path())) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (auto& f : files) entries.push_back({std::move(f), dir.filename().string()});
  }
  if (entries.empty()) throw Failure("corpus " + root.string() + " contains no images");
  return entries;
}

struct ExtractSummary {
  std::size_t processed = 0;
  std::size_t skipped = 0;
  std::size_t vector_length = 0;
};

// Extracts every image in parallel; rows and warnings come out in corpus order.
DatasetHandle extract_corpus(const fs::path& root, segl_approach approach, unsigned mask,
                             const segl_pipeline_config& cfg, ExtractSummary& summary) {
  const auto entries = discover(root);
  std::vector<Features> results(entries.size());
  std::vector<std::string> errors(entries.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      segl_image* img = nullptr;
      segl_status st = segl_image_load_file(entries[i].path.string().c_str(), &img);
      Image guard(img);
      segl_features* f = nullptr;
      if (st == SEGL_OK) st = segl_extract(img, approach, mask, &cfg, &f);
      if (st == SEGL_OK) {
        results[i].reset(f);
      } else {
        errors[i] = segl_last_error();
      }
    }
  };
  {
    const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(entries.size())));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
    work();
  }

  DatasetHandle ds;
  std::vector<std::string> labels_with_rows;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!results[i]) {
      std::cerr << "warning: skipping " << entries[i].path.string() << ": " << errors[i] << "\n";
      ++summary.skipped;
      continue;
    }
    if (!ds) {
      std::vector<const char*> names;
      for (std::size_t k = 0; k < segl_features_size(results[i].get()); ++k) {
        names.push_back(segl_features_name(results[i].get(), k));
      }
      segl_dataset* raw = nullptr;
      check(segl_dataset_create(names.data(), names.size(), &raw), "creating dataset");
      ds.reset(raw);
      summary.vector_length = names.size();
    }
    check(segl_dataset_add(ds.get(), entries[i].path.string().c_str(), entries[i].label.c_str(),
                           results[i].get()),
          "adding " + entries[i].path.string());
    ++summary.processed;
    if (std::find(labels_with_rows.begin(), labels_with_rows.end(), entries[i].label) ==
        labels_with_rows.end()) {
      labels_with_rows.push_back(entries[i].label);
    }
  }
  if (!ds) throw Failure("no image in " + root.string() + " could be processed");
  for (const auto& e : entries) {
    if (std::find(labels_with_rows.begin(), labels_with_rows.end(), e.label) ==
        labels_with_rows.end()) {
      std::cerr << "warning: label '" << e.label << "' has no usable image\n";
      labels_with_rows.push_back(e.label);
    }
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Commands

struct ExtractArgs {
  std::string corpus;
  std::string output;
  PipelineOptions pipeline;
};

int run_extract(const ExtractArgs& a) {
  const segl_approach approach = parse_approach(a.pipeline.approach);
  const unsigned mask = parse_directions(a.pipeline.directions);
  const auto cfg = a.pipeline.config();
  ExtractSummary summary;
  DatasetHandle ds = extract_corpus(a.corpus, approach, mask, cfg, summary);
  check(segl_dataset_save_csv(ds.get(), a.output.c_str()), "writing " + a.output);
  std::cout << "extracted " << summary.processed << " images, skipped " << summary.skipped
            << ", " << summary.vector_length << " features per image -> " << a.output << "\n";
  return 0;
}

struct CrossvalArgs {
  std::string dataset;
  std::string corpus;
  std::vector<std::string> approaches;
  std::vector<std::string> classifiers;
  int folds = 10;
  int repeats = 10;
  std::uint64_t seed = 42;
  std::string format = "table";
  std::string json_out;
  PipelineOptions pipeline;
};

int run_crossval(const CrossvalArgs& a) {
  std::vector<std::string> classifiers = a.classifiers;
  if (classifiers.empty()) classifiers = {"3nn", "5nn", "gnb"};
  std::vector<const char*> classifier_names;
  for (const auto& c : classifiers) classifier_names.push_back(c.c_str());

  segl_crossval_config cv;
  segl_crossval_config_init(&cv);
  cv.folds = a.folds;
  cv.repeats = a.repeats;
  cv.seed = a.seed;

  std::vector<std::string> row_names;
  std::vector<Report> reports;
  auto evaluate = [&](const segl_dataset* ds, std::string name) {
    segl_report* r = nullptr;
    check(segl_cross_validate(ds, classifier_names.data(), classifier_names.size(), &cv, &r),
          "cross-validating " + name);
    reports.emplace_back(r);
    row_names.push_back(std::move(name));
  };

  if (!a.dataset.empty()) {
    segl_dataset* raw = nullptr;
    check(segl_dataset_load_csv(a.dataset.c_str(), &raw), "loading " + a.dataset);
    DatasetHandle ds(raw);
    evaluate(ds.get(), fs::path(a.dataset).stem().string());
  } else {
    std::vector<std::string> approaches = a.approaches;
    if (approaches.empty()) approaches = {"segl", "lbp", "glcm"};
    const unsigned mask = parse_directions(a.pipeline.directions);
    const auto cfg = a.pipeline.config();
    for (const auto& name : approaches) {
      ExtractSummary summary;
      DatasetHandle ds = extract_corpus(a.corpus, parse_approach(name), mask, cfg, summary);
      evaluate(ds.get(), upper(name));
    }
  }

  std::vector<const segl_report*> rs;
  std::vector<const char*> ns;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    rs.push_back(reports[i].get());
    ns.push_back(row_names[i].c_str());
  }
  char* text = nullptr;
  check(segl_format_table(rs.data(), ns.data(), rs.size(), &text), "formatting report");
  CString table(text);
  check(segl_format_json(rs.data(), ns.data(), rs.size(), &text), "formatting report");
  CString json(text);

  std::cout << (a.format == "json" ? json.get() : table.get());
  if (!a.json_out.empty()) {
    std::ofstream out(a.json_out, std::ios::binary);
    out << json.get();
    if (!out) throw Failure("cannot write " + a.json_out);
  }
  return 0;
}

struct ClassifyArgs {
  std::string dataset;
  std::string image;
  std::string classifier = "3nn";
  PipelineOptions pipeline;
};

int run_classify(const ClassifyArgs& a) {
  const segl_approach approach = parse_approach(a.pipeline.approach);
  segl_dataset* raw = nullptr;
  check(segl_dataset_load_csv(a.dataset.c_str(), &raw), "loading " + a.dataset);
  DatasetHandle ds(raw);
  unsigned mask = 0;
  check(segl_dataset_direction_mask(ds.get(), &mask), "reading " + a.dataset);

  Image img = load_image(a.image);
  segl_features* f = nullptr;
  const auto cfg = a.pipeline.config();
  check(segl_extract(img.get(), approach, mask, &cfg, &f), "extracting " + a.image);
  Features features(f);

  char* label = nullptr;
  check(segl_classify(ds.get(), a.classifier.c_str(), features.get(), &label), "classifying");
  CString owned(label);
  std::cout << owned.get() << "\n";
  return 0;
}

struct InspectArgs {
  std::string image;
  std::string stage;
  std::string direction = "0";
  std::string output;
  PipelineOptions pipeline;
};

void write_csv(std::ostream& out, const segl_matrix* m) {
  const int w = segl_matrix_width(m);
  const int h = segl_matrix_height(m);
  const double* v = segl_matrix_data(m);
  char buf[32];
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::snprintf(buf, sizeof buf, "%.17g", v[static_cast<std::size_t>(y) * w + x]);
      if (x) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_csv(std::ostream& out, const segl_image* img) {
  const int w = segl_image_width(img);
  const int h = segl_image_height(img);
  const uint8_t* px = segl_image_pixels(img);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x) out << ',';
      out << static_cast<int>(px[static_cast<std::size_t>(y) * w + x]);
    }
    out << '\n';
  }
}

int run_inspect(const InspectArgs& a) {
  const bool isotropic = a.direction == "iso" || a.direction == "isotropic";
  int angle = SEGL_ISOTROPIC;
  if (!isotropic) {
    const unsigned mask = parse_directions(a.direction);
    if ((mask & (mask - 1)) != 0) {
      throw CLI::ValidationError("--direction", "inspect takes a single direction");
    }
    angle = 0;
    while (!(mask & (1u << (angle / 45)))) angle += 45;
  }
  if (isotropic && a.stage != "glcm") {
    throw CLI::ValidationError("--direction", "isotropic is only available for --stage glcm");
  }

  Image img = load_image(a.image);
  const auto cfg = a.pipeline.config();
  std::ostringstream dump;
  std::optional<Image> pgm_output;

  segl_image* lbp_raw = nullptr;
  check(segl_lbp_image(img.get(), &lbp_raw), "LBP of " + a.image);
  Image lbp(lbp_raw);

  if (a.stage == "lbp") {
    write_csv(dump, lbp.get());
  } else if (a.stage == "glcm" || a.stage == "edge") {
    segl_matrix* m = nullptr;
    check(segl_glcm(lbp.get(), angle, cfg.distance, cfg.levels, &m), "co-occurrence");
    Matrix counts(m);
    if (a.stage == "glcm") {
      write_csv(dump, counts.get());
    } else {
      check(segl_sobel_magnitude(counts.get(), &m), "Sobel");
      Matrix edges(m);
      write_csv(dump, edges.get());
    }
  } else {
    segl_features* f = nullptr;
    check(segl_extract(img.get(), parse_approach(a.pipeline.approach), 1u << (angle / 45), &cfg,
                       &f),
          "features");
    Features features(f);
    char buf[64];
    for (std::size_t i = 0; i < segl_features_size(features.get()); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", segl_features_value(features.get(), i));
      dump << segl_features_name(features.get(), i) << '=' << buf << '\n';
    }
  }

  if (a.output.empty()) {
    std::cout << dump.str();
    return 0;
  }
  if (a.stage == "lbp" && fs::path(a.output).extension() == ".pgm") {
    check(segl_image_save_file(lbp.get(), a.output.c_str(), 0), "writing " + a.output);
    return 0;
  }
  std::ofstream out(a.output, std::ios::binary);
  out << dump.str();
  if (!out) throw Failure("cannot write " + a.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SEGL texture features: LBP, co-occurrence, Sobel and statistics"};
  app.require_subcommand(1);

  ExtractArgs extract;
  auto* ex = app.add_subcommand("extract", "extract a feature CSV from a labeled image corpus");
  ex->add_option("corpus", extract.corpus, "directory with one subdirectory per label")
      ->required();
  ex->add_option("-o,--output", extract.output, "output CSV")->required();
  ex->add_option("--approach", extract.pipeline.approach, "segl, lbp or glcm")
      ->check(CLI::IsMember({"segl", "lbp", "glcm", "lbp-only", "glcm-only"}))
      ->capture_default_str();
  add_pipeline_options(ex, extract.pipeline);

  CrossvalArgs crossval;
  auto* cv = app.add_subcommand("crossval", "stratified k-fold cross-validation report");
  auto* cv_dataset = cv->add_option("--dataset", crossval.dataset, "feature CSV");
  auto* cv_corpus = cv->add_option("--corpus", crossval.corpus, "labeled image corpus");
  cv_dataset->excludes(cv_corpus);
  cv->add_option("--approach", crossval.approaches,
                 "approaches to compare when reading a corpus (default segl,lbp,glcm)")
      ->delimiter(',')
      ->check(CLI::IsMember({"segl", "lbp", "glcm", "lbp-only", "glcm-only"}));
  cv->add_option("--classifier", crossval.classifiers,
                 "3nn, 5nn, gnb, ... (repeatable; default 3nn,5nn,gnb)")
      ->delimiter(',');
  cv->add_option("--k-folds", crossval.folds, "number of folds")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  cv->add_option("--repeats", crossval.repeats, "reshuffled repetitions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cv->add_option("--seed", crossval.seed, "fold shuffling seed")->capture_default_str();
  cv->add_option("--format", crossval.format, "report on stdout")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  cv->add_option("--json", crossval.json_out, "also write the JSON report to this file");
  add_pipeline_options(cv, crossval.pipeline);

  ClassifyArgs classify;
  auto* cl = app.add_subcommand("classify", "predict the label of one image");
  cl->add_option("--dataset", classify.dataset, "training feature CSV")->required();
  cl->add_option("image", classify.image, "image to classify")->required();
  cl->add_option("--classifier", classify.classifier, "1nn, 3nn, 5nn, gnb, ...")
      ->capture_default_str();
  cl->add_option("--approach", classify.pipeline.approach,
                 "approach the dataset was extracted with")
      ->check(CLI::IsMember({"segl", "lbp", "glcm", "lbp-only", "glcm-only"}))
      ->capture_default_str();
  add_pipeline_options(cl, classify.pipeline, false);

  InspectArgs inspect;
  auto* in = app.add_subcommand("inspect", "dump an intermediate pipeline stage");
  in->add_option("image", inspect.image, "input image")->required();
  in->add_option("--stage", inspect.stage, "lbp, glcm, edge or features")
      ->required()
      ->check(CLI::IsMember({"lbp", "glcm", "edge", "features"}));
  in->add_option("--direction", inspect.direction, "angle in degrees, or iso for glcm")
      ->capture_default_str();
  in->add_option("--out", inspect.output, "write to a file instead of stdout (.pgm for lbp)");
  in->add_option("--approach", inspect.pipeline.approach, "approach for --stage features")
      ->check(CLI::IsMember({"segl", "lbp", "glcm", "lbp-only", "glcm-only"}))
      ->capture_default_str();
  add_pipeline_options(in, inspect.pipeline, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ex) return run_extract(extract);
    if (*cv) {
      if (crossval.dataset.empty() == crossval.corpus.empty()) {
        throw CLI::ValidationError("crossval", "give exactly one of --dataset or --corpus");
      }
      return run_crossval(crossval);
    }
    if (*cl) return run_classify(classify);
    if (*in) return run_inspect(inspect);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
