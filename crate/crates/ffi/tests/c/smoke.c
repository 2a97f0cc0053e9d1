#include <stdio.h>
#include <string.h>

#include "d0q.h"

int main(void) {
    D0qContext *ctx = d0q_context_new(256);
    if (!ctx) return 10;

    const char *coeffs[5] = {"0", "-1", "1", "0", "0"};
    char *omega = NULL;
    if (d0q_real_period(ctx, coeffs, &omega) != D0Q_STATUS_OK) return 11;
    if (strncmp(omega, "6.34604652139776710844", 22) != 0) return 12;
    d0q_string_free(omega);

    char *r = NULL;
    if (d0q_recognize(ctx, "-0.2", 100, "1e-30", &r) != D0Q_STATUS_OK) return 13;
    if (strcmp(r, "-1/5") != 0) return 14;
    d0q_string_free(r);

    const char *singular[5] = {"0", "0", "0", "0", "0"};
    if (d0q_real_period(ctx, singular, &omega) != D0Q_STATUS_SINGULAR_CURVE) return 15;
    if (strlen(d0q_last_error(ctx)) == 0) return 16;

    d0q_context_free(ctx);
    printf("ok\n");
    return 0;
}
