/* C interface to the double-lambda simulator. All handles are opaque; every call that can fail
   returns a status code and leaves a message retrievable with dlam_last_error(). */
#ifndef DLAM_H
#define DLAM_H

#include <stddef.h>

#if defined(_WIN32)
#define DLAM_API __declspec(dllexport)
#else
#define DLAM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  DLAM_OK = 0,
  DLAM_ERR_MISUSE = 1,
  DLAM_ERR_CONFIG = 2,
  DLAM_ERR_NUMERICAL = 3,
  DLAM_ERR_IO = 4
} dlam_status;

typedef struct dlam_config dlam_config;

/* Message of the last failed call on this thread ("" if none). */
DLAM_API const char* dlam_last_error(void);

DLAM_API dlam_status dlam_config_load(const char* path, dlam_config** out);
DLAM_API dlam_status dlam_config_preset(const char* name, dlam_config** out);
DLAM_API void dlam_config_free(dlam_config* cfg);

/* Overrides applied on top of a loaded configuration. */
DLAM_API dlam_status dlam_config_set_nodes(dlam_config* cfg, int nodes);
DLAM_API dlam_status dlam_config_set_step(dlam_config* cfg, double step);

/* Writes the validation report into buf (truncated to cap) and sets *failures. */
DLAM_API dlam_status dlam_validate(const dlam_config* cfg, char* buf, size_t cap, int* failures);

/* verb: "spectrum", "propagate", "switching", "velocity" or "manley-rowe". out_path "-" is stdout. */
DLAM_API dlam_status dlam_run(const dlam_config* cfg, const char* verb, const char* out_path);

/* Scalar diagnostics of the configured scheme. */
DLAM_API dlam_status dlam_thermal_speed(const dlam_config* cfg, double* out_m_per_s);
DLAM_API dlam_status dlam_doppler_fwhm(const dlam_config* cfg, int beam, double* out_ghz);
DLAM_API dlam_status dlam_raman_doppler_fwhm(const dlam_config* cfg, double* out_ghz);
DLAM_API dlam_status dlam_boltzmann_fraction_n(const dlam_config* cfg, double* out);

/* Number of preset files available and their names (index < count). */
DLAM_API int dlam_preset_count(void);
DLAM_API const char* dlam_preset_name(int index);

#ifdef __cplusplus
}
#endif

#endif
