#ifndef STAR_SOLVE_H
#define STAR_SOLVE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum StarStatus {
  STAR_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  STAR_STATUS_NULL_POINTER = 1,
  /*
   The voltages or edges violate the triangle inequality.
   */
  STAR_STATUS_INCONSISTENT = 2,
  /*
   A triangle angle is at least 120 degrees; no balanced star point.
   */
  STAR_STATUS_ANGLE_AT_LEAST120 = 3,
  /*
   Phase differences out of range.
   */
  STAR_STATUS_INVALID_PHASE = 4,
  /*
   No interior star point matches the input.
   */
  STAR_STATUS_INFEASIBLE = 5,
  /*
   A numeric argument is out of range (for example a non-positive tolerance).
   */
  STAR_STATUS_INVALID_ARGUMENT = 6,
  /*
   Internal error; the message has details.
   */
  STAR_STATUS_INTERNAL = 7,
} StarStatus;

/*
 Opaque solver handle.
 */
typedef struct StarSolver StarSolver;

/*
 Recovered line voltages.
 */
typedef struct StarLineVoltages {
  double u1p;
  double u2p;
  double u3p;
  /*
   Direction of each line-voltage phasor in degrees, from the star point
   towards terminals 1, 2, 3, in a frame with terminal 3 at the origin and
   terminal 2 on the positive real axis. NaN when unavailable.
   */
  double phases_deg[3];
  /*
   Bit `i` is set when line voltage `i + 1` vanishes (the star point sits
   on that terminal).
   */
  uint32_t vanishing;
  /*
   For `STAR_STATUS_ANGLE_AT_LEAST120`: the 1-based terminal at the wide
   angle; zero otherwise.
   */
  uint32_t wide_terminal;
} StarLineVoltages;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Creates a solver with default tolerances. Free it with
 [`star_solver_free`].
 */
struct StarSolver *star_solver_new(void);

/*
 Releases a handle. Null is ignored.

 # Safety
 `solver` must come from [`star_solver_new`] and not be used afterwards.
 */
void star_solver_free(struct StarSolver *solver);

/*
 Sets the relative closure tolerance (default `1e-8`).

 # Safety
 `solver` must be a live handle or null.
 */
enum StarStatus star_solver_set_tolerance(struct StarSolver *solver, double closure);

/*
 Message for the last failed call on this handle; empty after a success.
 The pointer stays valid until the next call on the handle.

 # Safety
 `solver` must be a live handle or null.
 */
const char *star_solver_last_error(const struct StarSolver *solver);

/*
 Line voltages for a balanced load (phase differences of 120 degrees).
 On `STAR_STATUS_ANGLE_AT_LEAST120`, `out` holds the voltages with the star
 point on the wide terminal.

 # Safety
 `solver` must be a live handle; `out` must point to writable memory.
 */
enum StarStatus star_solve_symmetric(struct StarSolver *solver,
                                     double u1,
                                     double u2,
                                     double u3,
                                     struct StarLineVoltages *out);

/*
 Line voltages for load phase differences `psi1`, `psi2` in degrees; the
 third is `360 - psi1 - psi2`.

 # Safety
 `solver` must be a live handle; `out` must point to writable memory.
 */
enum StarStatus star_solve_general(struct StarSolver *solver,
                                   double u1,
                                   double u2,
                                   double u3,
                                   double psi1_deg,
                                   double psi2_deg,
                                   struct StarLineVoltages *out);

/*
 Fermat-point distances `(a', b', c')` of the triangle with edges
 `(a, b, c)`, written to `out[0..3]`.

 # Safety
 `solver` must be a live handle; `out` must point to three writable doubles.
 */
enum StarStatus star_fermat_distances(struct StarSolver *solver,
                                      double a,
                                      double b,
                                      double c,
                                      double *out);

/*
 Heron quantity `sqrt((a+b+c)(-a+b+c)(a-b+c)(a+b-c))`, four times the
 triangle area. Needs no handle.

 # Safety
 `out` must point to a writable double.
 */
enum StarStatus star_theta_squared(double a, double b, double c, double *out);

/*
 Static description of a status code; takes the integer value so that
 unknown codes are safe to pass.
 */
const char *star_status_message(int32_t status);

/*
 Library version, e.g. `"0.1.0"`.
 */
const char *star_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STAR_SOLVE_H */
