#include <stdio.h>
#include <string.h>

#include "knotbound.h"

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            const char *e = kb_last_error();                         \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,  \
                    #cond, e ? e : "no error");                      \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    const int64_t trefoil[] = {-1, 1, 0, -1};
    KbKnot *k = NULL;
    CHECK(kb_knot_from_entries(trefoil, 2, &k) == KB_STATUS_OK);
    CHECK(kb_knot_genus(k) == 1);

    char *delta = NULL;
    CHECK(kb_alexander(k, &delta) == KB_STATUS_OK);
    CHECK(strcmp(delta, "t - 1 + t^-1") == 0);
    kb_string_free(delta);

    int64_t sigma = 0;
    CHECK(kb_signature(k, &sigma) == KB_STATUS_OK && sigma == -2);

    KbCertifiedBound b;
    CHECK(kb_certificate_verify(k, "A: t - 1 + t^-1\nS: 1; 0\n", &b) == KB_STATUS_OK);
    CHECK(b.n == 1 && b.n_plus == 1 && b.n_minus == 0);
    CHECK(kb_certificate_verify(k, "A: t + 1 + t^-1\nS: 1; 0\n", &b) == KB_STATUS_CERTIFICATE_REJECTED);
    CHECK(kb_last_error() != NULL);

    char *json = NULL;
    CHECK(kb_bounds_json(k, "3_1", NULL, 0, true, &json) == KB_STATUS_OK);
    CHECK(strstr(json, "\"status\": \"exact\"") != NULL);
    kb_string_free(json);
    kb_knot_free(k);

    const int64_t bad[] = {1, 0, 0, 1};
    KbKnot *none = NULL;
    CHECK(kb_knot_from_entries(bad, 2, &none) == KB_STATUS_NOT_SEIFERT);
    CHECK(none == NULL);
    puts("ok");
    return 0;
}
