#include <stdio.h>
#include <math.h>
#include "trisect.h"

int main(void) {
    double s[2];
    if (trisect_special_s(0, 0.0, 0.0, s) != TRISECT_STATUS_OK || fabs(s[0] - 1.0) > 1e-15) return 1;

    double x[3] = {0.0, 1.0, 2.0};
    double q[3] = {0.0, 0.0, 0.0};
    TrisectPotential *pot = NULL;
    if (trisect_potential_new(x, q, 3, 40, 1.0, true, &pot) != TRISECT_STATUS_OK) return 2;
    double c[6];
    if (trisect_scattering_coefficients(pot, 0.7, 0.3, 1.0, 0.0, 0.0, c) != TRISECT_STATUS_OK) return 3;
    if (fabs(c[0] + 0.5) > 1e-12) return 4;

    if (trisect_special_s(5, 0.0, 0.0, s) != TRISECT_STATUS_INVALID_ARGUMENT) return 5;
    char msg[64];
    size_t n = trisect_last_error(msg, sizeof msg);
    if (n == 0 || msg[0] == 0) return 6;

    trisect_potential_free(pot);
    printf("ok\n");
    return 0;
}
