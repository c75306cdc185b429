#ifndef LATERAL_CP_H
#define LATERAL_CP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LcpGammaMode {
  LcpGammaMode_Total = 0,
  LcpGammaMode_FreeSpace = 1,
} LcpGammaMode;

typedef enum LcpStatus {
  LcpStatus_Ok = 0,
  LcpStatus_NullPointer = 1,
  LcpStatus_InvalidArgument = 2,
  LcpStatus_NonConvergence = 3,
  LcpStatus_UnknownMaterial = 4,
  LcpStatus_Unsupported = 5,
  LcpStatus_Internal = 6,
  LcpStatus_Panic = 7,
} LcpStatus;

/**
 * Opaque emitter handle, carrying its solver options.
 */
typedef struct LcpEmitter LcpEmitter;

/**
 * Opaque material handle.
 */
typedef struct LcpMaterial LcpMaterial;

/**
 * A force value [N] with its absolute error estimate [N].
 */
typedef struct LcpForce {
  double value;
  double error_estimate;
} LcpForce;

/**
 * Angular spectrum coefficients [N] at distance `z` [m].
 */
typedef struct LcpSpectrumCoefficients {
  double a;
  double b;
  double c;
  double d;
  double z;
} LcpSpectrumCoefficients;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *lcp_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *lcp_version(void);

/**
 * Looks up `name` in the material registry (shipped defaults, or the file
 * named by `LATERAL_CP_MATERIALS`).
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a writable pointer.
 */
enum LcpStatus lcp_material_from_registry(const char *name, struct LcpMaterial **out);

/**
 * A dielectric with relative permittivity `eps_re + i eps_im`, `eps_im >= 0`.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum LcpStatus lcp_material_dielectric(double eps_re, double eps_im, struct LcpMaterial **out);

/**
 * # Safety
 * `out` must be a writable pointer.
 */
enum LcpStatus lcp_material_perfect_conductor(struct LcpMaterial **out);

/**
 * # Safety
 * `material` must be null or a handle from this library, freed at most once.
 */
void lcp_material_free(struct LcpMaterial *material);

/**
 * Cs D2 emitter, σ⁺, at distance `z` [m], with default solver options.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum LcpStatus lcp_emitter_cesium(double z, struct LcpEmitter **out);

/**
 * # Safety
 * `emitter` must be null or a handle from this library, freed at most once.
 */
void lcp_emitter_free(struct LcpEmitter *emitter);

/**
 * # Safety
 * `emitter` must be a live handle.
 */
enum LcpStatus lcp_emitter_set_distance(struct LcpEmitter *emitter, double z);

/**
 * `sigma_minus = true` selects σ⁻ emission.
 *
 * # Safety
 * `emitter` must be a live handle.
 */
enum LcpStatus lcp_emitter_set_handedness(struct LcpEmitter *emitter, bool sigma_minus);

/**
 * # Safety
 * `emitter` must be a live handle.
 */
enum LcpStatus lcp_emitter_set_rel_tol(struct LcpEmitter *emitter, double rel_tol);

/**
 * # Safety
 * `emitter` must be a live handle.
 */
enum LcpStatus lcp_emitter_set_gamma_mode(struct LcpEmitter *emitter, enum LcpGammaMode mode);

/**
 * Full lateral force at time `t` [s].
 *
 * # Safety
 * `emitter` and `material` must be live handles; `out` writable.
 */
enum LcpStatus lcp_lateral_force(const struct LcpEmitter *emitter,
                                 const struct LcpMaterial *material,
                                 double t,
                                 struct LcpForce *out);

/**
 * Perfect-conductor closed form at time `t` [s].
 *
 * # Safety
 * `emitter` must be a live handle; `out` writable.
 */
enum LcpStatus lcp_lateral_force_pc(const struct LcpEmitter *emitter,
                                    double t,
                                    struct LcpForce *out);

/**
 * Non-retarded law; `LcpStatus_Unsupported` for the perfect conductor.
 *
 * # Safety
 * `emitter` and `material` must be live handles; `out` writable.
 */
enum LcpStatus lcp_lateral_force_near(const struct LcpEmitter *emitter,
                                      const struct LcpMaterial *material,
                                      double t,
                                      struct LcpForce *out);

/**
 * Retarded law.
 *
 * # Safety
 * `emitter` and `material` must be live handles; `out` writable.
 */
enum LcpStatus lcp_lateral_force_retarded(const struct LcpEmitter *emitter,
                                          const struct LcpMaterial *material,
                                          double t,
                                          struct LcpForce *out);

/**
 * y-component of the curl of the perfect-conductor force [N/m].
 *
 * # Safety
 * `emitter` must be a live handle; `out` writable.
 */
enum LcpStatus lcp_force_curl_pc(const struct LcpEmitter *emitter, double *out);

/**
 * Free-space, surface-assisted and total decay rates [1/s]. The total
 * follows the emitter's gamma mode.
 *
 * # Safety
 * `emitter` and `material` must be live handles; all outputs writable.
 */
enum LcpStatus lcp_decay_rates(const struct LcpEmitter *emitter,
                               const struct LcpMaterial *material,
                               double *free_space,
                               double *surface,
                               double *total);

/**
 * Recoil velocity `F_x(0)/(mΓ)` [m/s].
 *
 * # Safety
 * `emitter` and `material` must be live handles; `out` writable.
 */
enum LcpStatus lcp_recoil_velocity(const struct LcpEmitter *emitter,
                                   const struct LcpMaterial *material,
                                   double *out);

/**
 * # Safety
 * `emitter` and `material` must be live handles; `out` writable.
 */
enum LcpStatus lcp_spectrum_coefficients(const struct LcpEmitter *emitter,
                                         const struct LcpMaterial *material,
                                         struct LcpSpectrumCoefficients *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LATERAL_CP_H */
