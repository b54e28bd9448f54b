/*
 * segl.h - C interface to the SEGL texture classification library.
 *
 * All objects are opaque handles created by a segl_*_create / load / compute
 * function and released with the matching segl_*_free. Every fallible call
 * returns a segl_status; on failure segl_last_error() describes the problem.
 * Functions are thread-safe as long as a handle is not mutated from two
 * threads at once.
 */
#ifndef SEGL_SEGL_H
#define SEGL_SEGL_H

#include <stddef.h>
#include <stdint.h>

#if defined(SEGL_BUILDING_LIBRARY)
#define SEGL_API __attribute__((visibility("default")))
#else
#define SEGL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum segl_status {
  SEGL_OK = 0,
  SEGL_ERR_PARSE = 1,
  SEGL_ERR_DIMENSION = 2,
  SEGL_ERR_CONFIG = 3,
  SEGL_ERR_DOMAIN = 4,
  SEGL_ERR_SCHEMA = 5,
  SEGL_ERR_FIT = 6,
  SEGL_ERR_IO = 7,
  SEGL_ERR_INVALID_ARGUMENT = 100,
  SEGL_ERR_INTERNAL = 101
} segl_status;

typedef struct segl_image segl_image;
typedef struct segl_matrix segl_matrix;
typedef struct segl_features segl_features;
typedef struct segl_dataset segl_dataset;
typedef struct segl_report segl_report;

/* Message for the last failed call on the calling thread. Never NULL. */
SEGL_API const char* segl_last_error(void);
SEGL_API const char* segl_status_string(segl_status status);
/* Releases strings returned through char** out-parameters. */
SEGL_API void segl_string_free(char* s);

/* ---- images ------------------------------------------------------------ */

/* P2/P5 graymaps; P3/P6 pixmaps are converted to gray. */
SEGL_API segl_status segl_image_load_file(const char* path, segl_image** out);
SEGL_API segl_status segl_image_load_memory(const void* bytes, size_t size, segl_image** out);
SEGL_API segl_status segl_image_from_gray(int width, int height, const uint8_t* pixels,
                                          segl_image** out);
/* rgb holds 3 * width * height bytes, R G B per pixel. */
SEGL_API segl_status segl_image_from_rgb(int width, int height, const uint8_t* rgb,
                                         segl_image** out);
/* binary != 0 writes P5, otherwise P2. */
SEGL_API segl_status segl_image_save_file(const segl_image* img, const char* path, int binary);
SEGL_API int segl_image_width(const segl_image* img);
SEGL_API int segl_image_height(const segl_image* img);
SEGL_API const uint8_t* segl_image_pixels(const segl_image* img);
SEGL_API void segl_image_free(segl_image* img);

/* ---- pipeline stages ------------------------------------------------------ */

/* Direction bit i selects the angle 45*i degrees. */
#define SEGL_DIRECTION_0 0x01u
#define SEGL_DIRECTIONS_ALL 0xFFu
/* Pass as `angle` to segl_glcm for the sum over all eight directions. */
#define SEGL_ISOTROPIC (-1)

typedef enum segl_approach {
  SEGL_APPROACH_SEGL = 0,
  SEGL_APPROACH_LBP = 1,
  SEGL_APPROACH_GLCM = 2
} segl_approach;

typedef enum segl_edge_output {
  SEGL_EDGE_MAGNITUDE = 0,
  SEGL_EDGE_BINARY = 1
} segl_edge_output;

typedef struct segl_pipeline_config {
  int levels;   /* gray levels q in [2, 256] */
  int distance; /* co-occurrence offset in pixels, >= 1 */
  segl_edge_output edge_output;
} segl_pipeline_config;

/* levels 256, distance 1, gradient magnitude. */
SEGL_API void segl_pipeline_config_init(segl_pipeline_config* cfg);
SEGL_API segl_status segl_parse_approach(const char* name, segl_approach* out);

SEGL_API segl_status segl_lbp_image(const segl_image* img, segl_image** out);
/* Co-occurrence counts as a levels x levels matrix (row = first pixel). */
SEGL_API segl_status segl_glcm(const segl_image* img, int angle, int distance, int levels,
                               segl_matrix** out);
SEGL_API segl_status segl_sobel_magnitude(const segl_matrix* m, segl_matrix** out);
/* The normalized distribution whose statistics the given approach reports. */
SEGL_API segl_status segl_pipeline_distribution(const segl_image* img, segl_approach approach,
                                                int angle, const segl_pipeline_config* cfg,
                                                segl_matrix** out);
SEGL_API int segl_matrix_width(const segl_matrix* m);
SEGL_API int segl_matrix_height(const segl_matrix* m);
/* Row-major values, width * height of them. */
SEGL_API const double* segl_matrix_data(const segl_matrix* m);
SEGL_API void segl_matrix_free(segl_matrix* m);

/* Seven statistics per selected direction, directions ascending. */
SEGL_API segl_status segl_extract(const segl_image* img, segl_approach approach,
                                  unsigned direction_mask, const segl_pipeline_config* cfg,
                                  segl_features** out);
SEGL_API size_t segl_features_size(const segl_features* f);
SEGL_API const char* segl_features_name(const segl_features* f, size_t i);
SEGL_API double segl_features_value(const segl_features* f, size_t i);
SEGL_API void segl_features_free(segl_features* f);

/* ---- datasets ------------------------------------------------------------- */

SEGL_API segl_status segl_dataset_create(const char* const* feature_names, size_t count,
                                         segl_dataset** out);
/* Appends a row; the feature names must match the dataset schema. */
SEGL_API segl_status segl_dataset_add(segl_dataset* ds, const char* path, const char* label,
                                      const segl_features* features);
SEGL_API segl_status segl_dataset_load_csv(const char* path, segl_dataset** out);
SEGL_API segl_status segl_dataset_save_csv(const segl_dataset* ds, const char* path);
SEGL_API size_t segl_dataset_size(const segl_dataset* ds);
SEGL_API size_t segl_dataset_dimension(const segl_dataset* ds);
SEGL_API const char* segl_dataset_feature_name(const segl_dataset* ds, size_t i);
/* Direction mask implied by the dataset's feature columns. */
SEGL_API segl_status segl_dataset_direction_mask(const segl_dataset* ds, unsigned* out);
SEGL_API void segl_dataset_free(segl_dataset* ds);

/* ---- classification ------------------------------------------------------- */

/* Standardizes on the whole dataset, fits `classifier` ("1nn", "3nn", "gnb",
   ...) and writes the predicted label. *label is released with
   segl_string_free. */
SEGL_API segl_status segl_classify(const segl_dataset* train, const char* classifier,
                                   const segl_features* query, char** label);

typedef struct segl_crossval_config {
  int folds;
  int repeats;
  uint64_t seed;
} segl_crossval_config;

/* 10 folds, 10 repeats, seed 42. */
SEGL_API void segl_crossval_config_init(segl_crossval_config* cfg);
SEGL_API segl_status segl_cross_validate(const segl_dataset* ds, const char* const* classifiers,
                                         size_t classifier_count,
                                         const segl_crossval_config* cfg, segl_report** out);
SEGL_API size_t segl_report_classifier_count(const segl_report* r);
SEGL_API const char* segl_report_classifier(const segl_report* r, size_t i);
SEGL_API double segl_report_mean(const segl_report* r, size_t i);
SEGL_API double segl_report_std(const segl_report* r, size_t i);
SEGL_API void segl_report_free(segl_report* r);

/* Renders reports (one per approach) as a text table or a JSON document.
   *out is released with segl_string_free. */
SEGL_API segl_status segl_format_table(const segl_report* const* reports,
                                       const char* const* approach_names, size_t count,
                                       char** out);
SEGL_API segl_status segl_format_json(const segl_report* const* reports,
                                      const char* const* approach_names, size_t count,
                                      char** out);

#ifdef __cplusplus
}
#endif

#endif /* SEGL_SEGL_H */
