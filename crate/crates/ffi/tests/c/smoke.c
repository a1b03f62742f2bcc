/* Exercises the C header against the static library. Exit status 0 on success. */
#include <math.h>
#include <stdio.h>

#include "birange.h"

#define CHECK(cond)                                                         \
    do {                                                                    \
        if (!(cond)) {                                                      \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
                    birange_last_error());                                  \
            return 1;                                                       \
        }                                                                   \
    } while (0)

static BirangeComplex cx(double re, double im) {
    BirangeComplex z = {re, im};
    return z;
}

int main(void) {
    BirangeComplex e[16] = {
        cx(4, 0), cx(0, 0), cx(4, -8), cx(0, 0),
        cx(0, 0), cx(4, 0), cx(5, -5), cx(4, -12),
        cx(-2, 6), cx(5, -5), cx(-4, 0), cx(0, 0),
        cx(0, 0), cx(2, 6), cx(0, 0), cx(-4, 0),
    };
    BirangeMatrix *m = NULL;
    CHECK(birange_matrix_from_raw(e, &m) == BIRANGE_STATUS_OK);
    CHECK(birange_matrix_is_block(m));

    BirangeVerdict *v = NULL;
    CHECK(birange_check(m, NULL, &v) == BIRANGE_STATUS_OK);
    CHECK(birange_verdict_kind(v) == BIRANGE_KIND_BI_ELLIPTICAL);
    CHECK(birange_verdict_reason(v) == BIRANGE_REASON_NONE);

    double theta = 0;
    CHECK(birange_verdict_theta(v, &theta) == BIRANGE_STATUS_OK);
    CHECK(fabs(theta - 3 * M_PI / 4) < 1e-9);

    BirangeEllipse ell[2];
    CHECK(birange_verdict_ellipses(v, ell) == BIRANGE_STATUS_OK);
    /* the centers are ±(σ1+σ2)/2 with |σ1+σ2| = 5√2 */
    double dx = ell[0].center.re - ell[1].center.re, dy = ell[0].center.im - ell[1].center.im;
    CHECK(fabs(sqrt(dx * dx + dy * dy) - 5 * sqrt(2.0)) < 1e-9);

    BirangeBoundarySample samples[256];
    CHECK(birange_boundary(m, 256, samples, 128) == BIRANGE_STATUS_BUFFER_TOO_SMALL);
    CHECK(birange_boundary(m, 256, samples, 256) == BIRANGE_STATUS_OK);
    CHECK(samples[0].theta == 0.0 && samples[0].support_value > 0.0);
    birange_verdict_free(v);
    birange_matrix_free(m);

    CHECK(birange_matrix_from_reciprocal(1, -1, 1, &m) == BIRANGE_STATUS_INVALID_ARGUMENT);

    double b = 0;
    bool found = false;
    CHECK(birange_solve_b(0.1, 0, cx(0.6, -0.2), cx(0.4, -0.2), &b, &found) == BIRANGE_STATUS_OK);
    CHECK(found && fabs(b - 1) < 1e-9);
    CHECK(birange_solve_b(0, 0, cx(0.6, -0.2), cx(0.4, -0.2), &b, &found) == BIRANGE_STATUS_ALPHA_ZERO);

    puts("ok");
    return 0;
}
