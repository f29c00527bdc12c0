/* Minimal C client: prints degree, Tjurina number and Δ¹ for a catalog curve. */
#include <stdio.h>
#include "milnor.h"

int main(int argc, char **argv) {
    const char *id = argc > 1 ? argv[1] : "zariski-sextic";
    MilnorCurve *curve = NULL;
    if (milnor_curve_from_catalog(id, 0, &curve) != MILNOR_STATUS_OK) {
        fprintf(stderr, "error: %s\n", milnor_last_error_message());
        return 2;
    }
    uint32_t d = 0;
    size_t tau = 0;
    char *delta1 = NULL;
    milnor_curve_degree(curve, &d);
    milnor_curve_tjurina(curve, &tau);
    MilnorStatus st = milnor_curve_delta1(curve, &delta1);
    printf("degree %u tjurina %zu delta1 %s\n", d, tau, st == MILNOR_STATUS_OK ? delta1 : milnor_last_error_message());
    milnor_string_free(delta1);
    milnor_curve_free(curve);
    return st == MILNOR_STATUS_OK ? 0 : 3;
}
