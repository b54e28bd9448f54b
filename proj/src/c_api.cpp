#include "segl/segl.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "segl/edge.hpp"
#include "segl/error.hpp"
#include "segl/features.hpp"
#include "segl/glcm.hpp"
#include "segl/image.hpp"
#include "segl/lbp.hpp"
#include "segl/ml.hpp"

struct segl_image {
  segl::GrayImage img;
};
struct segl_matrix {
  segl::ScalarField field;
};
struct segl_features {
  segl::FeatureVector fv;
};
struct segl_dataset {
  segl::Dataset ds;
};
struct segl_report {
  segl::CrossValReport report;
};

namespace {

thread_local std::string g_last_error;

segl_status fail(segl_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

segl_status status_of(segl::ErrorCode code) {
  switch (code) {
    case segl::ErrorCode::Parse: return SEGL_ERR_PARSE;
    case segl::ErrorCode::Dimension: return SEGL_ERR_DIMENSION;
    case segl::ErrorCode::Config: return SEGL_ERR_CONFIG;
    case segl::ErrorCode::Domain: return SEGL_ERR_DOMAIN;
    case segl::ErrorCode::Schema: return SEGL_ERR_SCHEMA;
    case segl::ErrorCode::Fit: return SEGL_ERR_FIT;
    case segl::ErrorCode::Io: return SEGL_ERR_IO;
  }
  return SEGL_ERR_INTERNAL;
}

// Runs body() and converts any exception into a status code.
template <typename Body>
segl_status guarded(Body&& body) {
  try {
    body();
    return SEGL_OK;
  } catch (const segl::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SEGL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SEGL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SEGL_ERR_INTERNAL, "unknown error");
  }
}

#define SEGL_REQUIRE(cond)                                                   \
  do {                                                                       \
    if (!(cond)) return fail(SEGL_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<segl::Direction> directions_of(unsigned mask) {
  std::vector<segl::Direction> dirs;
  for (segl::Direction d : segl::kAllDirections) {
    if (mask & (1u << static_cast<unsigned>(d))) dirs.push_back(d);
  }
  if (dirs.empty() || mask > SEGL_DIRECTIONS_ALL) {
    throw segl::Error(segl::ErrorCode::Config, "direction mask must select 1 to 8 directions");
  }
  return dirs;
}

segl::PipelineConfig pipeline_of(const segl_pipeline_config* cfg) {
  segl::PipelineConfig out;
  if (cfg) {
    out.levels = cfg->levels;
    out.distance = cfg->distance;
    out.edge_output = cfg->edge_output == SEGL_EDGE_BINARY ? segl::EdgeOutput::Binary
                                                           : segl::EdgeOutput::Magnitude;
  }
  return out;
}

segl::Approach approach_of(segl_approach a) {
  switch (a) {
    case SEGL_APPROACH_SEGL: return segl::Approach::Segl;
    case SEGL_APPROACH_LBP: return segl::Approach::LbpOnly;
    case SEGL_APPROACH_GLCM: return segl::Approach::GlcmOnly;
  }
  throw segl::Error(segl::ErrorCode::Config, "unknown approach value");
}

std::vector<segl::NamedReport> named_reports(const segl_report* const* reports,
                                             const char* const* names, size_t count) {
  std::vector<segl::NamedReport> out;
  for (size_t i = 0; i < count; ++i) {
    if (!reports[i] || !names[i]) {
      throw segl::Error(segl::ErrorCode::Config, "null report or approach name");
    }
    out.push_back({names[i], reports[i]->report});
  }
  return out;
}

}  // namespace

extern "C" {

const char* segl_last_error(void) { return g_last_error.c_str(); }

const char* segl_status_string(segl_status status) {
  switch (status) {
    case SEGL_OK: return "ok";
    case SEGL_ERR_PARSE: return "parse error";
    case SEGL_ERR_DIMENSION: return "dimension error";
    case SEGL_ERR_CONFIG: return "config error";
    case SEGL_ERR_DOMAIN: return "domain error";
    case SEGL_ERR_SCHEMA: return "schema error";
    case SEGL_ERR_FIT: return "fit error";
    case SEGL_ERR_IO: return "io error";
    case SEGL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SEGL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void segl_string_free(char* s) { std::free(s); }

// ---- images

segl_status segl_image_load_file(const char* path, segl_image** out) {
  SEGL_REQUIRE(path && out);
  return guarded([&] { *out = new segl_image{segl::load_pgm_file(path)}; });
}

segl_status segl_image_load_memory(const void* bytes, size_t size, segl_image** out) {
  SEGL_REQUIRE((bytes || size == 0) && out);
  return guarded([&] {
    *out = new segl_image{segl::load_pgm(std::string_view(static_cast<const char*>(bytes), size))};
  });
}

segl_status segl_image_from_gray(int width, int height, const uint8_t* pixels, segl_image** out) {
  SEGL_REQUIRE(pixels && out && width > 0 && height > 0);
  return guarded([&] {
    const auto n = static_cast<size_t>(width) * static_cast<size_t>(height);
    *out = new segl_image{segl::GrayImage(width, height, std::vector<uint8_t>(pixels, pixels + n))};
  });
}

segl_status segl_image_from_rgb(int width, int height, const uint8_t* rgb, segl_image** out) {
  SEGL_REQUIRE(rgb && out && width > 0 && height > 0);
  return guarded([&] {
    const auto n = static_cast<size_t>(width) * static_cast<size_t>(height);
    std::vector<segl::Rgb> triplets(n);
    for (size_t i = 0; i < n; ++i) triplets[i] = {rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]};
    *out = new segl_image{segl::to_gray(triplets, width, height)};
  });
}

segl_status segl_image_save_file(const segl_image* img, const char* path, int binary) {
  SEGL_REQUIRE(img && path);
  return guarded([&] {
    segl::save_pgm_file(img->img, path,
                        binary ? segl::PgmEncoding::Binary : segl::PgmEncoding::Plain);
  });
}

int segl_image_width(const segl_image* img) { return img ? img->img.width() : 0; }
int segl_image_height(const segl_image* img) { return img ? img->img.height() : 0; }
const uint8_t* segl_image_pixels(const segl_image* img) {
  return img ? img->img.pixels().data() : nullptr;
}
void segl_image_free(segl_image* img) { delete img; }

// ---- pipeline stages

void segl_pipeline_config_init(segl_pipeline_config* cfg) {
  if (!cfg) return;
  cfg->levels = 256;
  cfg->distance = 1;
  cfg->edge_output = SEGL_EDGE_MAGNITUDE;
}

segl_status segl_parse_approach(const char* name, segl_approach* out) {
  SEGL_REQUIRE(name && out);
  return guarded([&] {
    switch (segl::approach_from_string(name)) {
      case segl::Approach::Segl: *out = SEGL_APPROACH_SEGL; break;
      case segl::Approach::LbpOnly: *out = SEGL_APPROACH_LBP; break;
      case segl::Approach::GlcmOnly: *out = SEGL_APPROACH_GLCM; break;
    }
  });
}

segl_status segl_lbp_image(const segl_image* img, segl_image** out) {
  SEGL_REQUIRE(img && out);
  return guarded([&] { *out = new segl_image{segl::lbp_image(img->img)}; });
}

segl_status segl_glcm(const segl_image* img, int angle, int distance, int levels,
                      segl_matrix** out) {
  SEGL_REQUIRE(img && out);
  return guarded([&] {
    const auto m = angle == SEGL_ISOTROPIC
                       ? segl::isotropic_glcm(img->img, distance, levels)
                       : segl::glcm(img->img, segl::direction_from_angle(angle), distance, levels);
    *out = new segl_matrix{m.to_field()};
  });
}

segl_status segl_sobel_magnitude(const segl_matrix* m, segl_matrix** out) {
  SEGL_REQUIRE(m && out);
  return guarded([&] { *out = new segl_matrix{segl::sobel_magnitude(m->field)}; });
}

segl_status segl_pipeline_distribution(const segl_image* img, segl_approach approach, int angle,
                                       const segl_pipeline_config* cfg, segl_matrix** out) {
  SEGL_REQUIRE(img && out);
  return guarded([&] {
    *out = new segl_matrix{segl::pipeline_distribution(
        img->img, approach_of(approach), segl::direction_from_angle(angle), pipeline_of(cfg))};
  });
}

int segl_matrix_width(const segl_matrix* m) { return m ? m->field.width() : 0; }
int segl_matrix_height(const segl_matrix* m) { return m ? m->field.height() : 0; }
const double* segl_matrix_data(const segl_matrix* m) {
  return m ? m->field.values().data() : nullptr;
}
void segl_matrix_free(segl_matrix* m) { delete m; }

segl_status segl_extract(const segl_image* img, segl_approach approach, unsigned direction_mask,
                         const segl_pipeline_config* cfg, segl_features** out) {
  SEGL_REQUIRE(img && out);
  return guarded([&] {
    const auto dirs = directions_of(direction_mask);
    *out = new segl_features{
        segl::baseline_features(img->img, approach_of(approach), dirs, pipeline_of(cfg))};
  });
}

size_t segl_features_size(const segl_features* f) { return f ? f->fv.size() : 0; }
const char* segl_features_name(const segl_features* f, size_t i) {
  return f && i < f->fv.names.size() ? f->fv.names[i].c_str() : nullptr;
}
double segl_features_value(const segl_features* f, size_t i) {
  return f && i < f->fv.values.size() ? f->fv.values[i] : 0.0;
}
void segl_features_free(segl_features* f) { delete f; }

// ---- datasets

segl_status segl_dataset_create(const char* const* feature_names, size_t count,
                                segl_dataset** out) {
  SEGL_REQUIRE(feature_names && out);
  return guarded([&] {
    std::vector<std::string> names;
    for (size_t i = 0; i < count; ++i) {
      if (!feature_names[i]) throw segl::Error(segl::ErrorCode::Schema, "null feature name");
      names.emplace_back(feature_names[i]);
    }
    *out = new segl_dataset{segl::Dataset(std::move(names))};
  });
}

segl_status segl_dataset_add(segl_dataset* ds, const char* path, const char* label,
                             const segl_features* features) {
  SEGL_REQUIRE(ds && path && label && features);
  return guarded([&] {
    if (features->fv.names != ds->ds.feature_names()) {
      throw segl::Error(segl::ErrorCode::Schema,
                        std::string("features of '") + path + "' do not match the dataset columns");
    }
    ds->ds.add({path, label, features->fv.values});
  });
}

segl_status segl_dataset_load_csv(const char* path, segl_dataset** out) {
  SEGL_REQUIRE(path && out);
  return guarded([&] { *out = new segl_dataset{segl::load_dataset_csv(path)}; });
}

segl_status segl_dataset_save_csv(const segl_dataset* ds, const char* path) {
  SEGL_REQUIRE(ds && path);
  return guarded([&] { segl::save_dataset_csv(ds->ds, path); });
}

size_t segl_dataset_size(const segl_dataset* ds) { return ds ? ds->ds.size() : 0; }
size_t segl_dataset_dimension(const segl_dataset* ds) { return ds ? ds->ds.dimension() : 0; }
const char* segl_dataset_feature_name(const segl_dataset* ds, size_t i) {
  return ds && i < ds->ds.dimension() ? ds->ds.feature_names()[i].c_str() : nullptr;
}

segl_status segl_dataset_direction_mask(const segl_dataset* ds, unsigned* out) {
  SEGL_REQUIRE(ds && out);
  return guarded([&] {
    unsigned mask = 0;
    for (segl::Direction d : segl::directions_from_names(ds->ds.feature_names())) {
      mask |= 1u << static_cast<unsigned>(d);
    }
    *out = mask;
  });
}

void segl_dataset_free(segl_dataset* ds) { delete ds; }

// ---- classification

segl_status segl_classify(const segl_dataset* train, const char* classifier,
                          const segl_features* query, char** label) {
  SEGL_REQUIRE(train && classifier && query && label);
  return guarded([&] {
    const auto spec = segl::ClassifierSpec::parse(classifier);
    if (train->ds.size() == 0) throw segl::Error(segl::ErrorCode::Fit, "training dataset is empty");
    const auto params = segl::standardize_fit(train->ds);
    const auto std_train = segl::standardize_apply(params, train->ds);
    const auto q = segl::standardize_apply(params, query->fv.names, query->fv.values);
    std::string result;
    if (spec.kind == segl::ClassifierSpec::Kind::GaussianNb) {
      result = segl::gnb_classify(segl::gnb_fit(std_train), q);
    } else {
      result = segl::knn_classify(std_train, spec.k, q);
    }
    *label = duplicate(result);
  });
}

void segl_crossval_config_init(segl_crossval_config* cfg) {
  if (!cfg) return;
  const segl::CrossValConfig defaults;
  cfg->folds = defaults.folds;
  cfg->repeats = defaults.repeats;
  cfg->seed = defaults.seed;
}

segl_status segl_cross_validate(const segl_dataset* ds, const char* const* classifiers,
                                size_t classifier_count, const segl_crossval_config* cfg,
                                segl_report** out) {
  SEGL_REQUIRE(ds && classifiers && cfg && out);
  return guarded([&] {
    std::vector<segl::ClassifierSpec> specs;
    for (size_t i = 0; i < classifier_count; ++i) {
      if (!classifiers[i]) throw segl::Error(segl::ErrorCode::Config, "null classifier name");
      specs.push_back(segl::ClassifierSpec::parse(classifiers[i]));
    }
    const segl::CrossValConfig c{cfg->folds, cfg->repeats, cfg->seed};
    *out = new segl_report{segl::cross_validate(ds->ds, specs, c)};
  });
}

size_t segl_report_classifier_count(const segl_report* r) {
  return r ? r->report.results.size() : 0;
}
const char* segl_report_classifier(const segl_report* r, size_t i) {
  return r && i < r->report.results.size() ? r->report.results[i].classifier.c_str() : nullptr;
}
double segl_report_mean(const segl_report* r, size_t i) {
  return r && i < r->report.results.size() ? r->report.results[i].mean_accuracy : 0.0;
}
double segl_report_std(const segl_report* r, size_t i) {
  return r && i < r->report.results.size() ? r->report.results[i].std_accuracy : 0.0;
}
void segl_report_free(segl_report* r) { delete r; }

segl_status segl_format_table(const segl_report* const* reports, const char* const* approach_names,
                              size_t count, char** out) {
  SEGL_REQUIRE(reports && approach_names && out);
  return guarded([&] { *out = duplicate(segl::format_table(named_reports(reports, approach_names, count))); });
}

segl_status segl_format_json(const segl_report* const* reports, const char* const* approach_names,
                             size_t count, char** out) {
  SEGL_REQUIRE(reports && approach_names && out);
  return guarded([&] { *out = duplicate(segl::format_json(named_reports(reports, approach_names, count))); });
}

}  // extern "C"
