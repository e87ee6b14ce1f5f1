#include <stdio.h>
#include <string.h>

#include "propb.h"

int main(void) {
    PropbHypergraph *h = NULL;
    if (propb_hypergraph_construct("paper-example", &h) != PROPB_STATUS_OK) {
        fprintf(stderr, "construct: %s\n", propb_last_error());
        return 1;
    }
    char *q = NULL;
    double approx = 0.0;
    if (propb_hypergraph_q(h, &q, &approx) != PROPB_STATUS_OK || strcmp(q, "95/2^6") != 0) {
        return 1;
    }
    bool colourable = true;
    if (propb_is_two_colourable(h, &colourable, NULL, 0) != PROPB_STATUS_OK || colourable) {
        return 1;
    }
    PropbHypergraph *bad = NULL;
    if (propb_hypergraph_parse("p 2 1\n0 0\n", &bad) != PROPB_STATUS_PARSE_ERROR || bad != NULL) {
        return 1;
    }
    printf("q = %s (%.4f)\n", q, approx);
    propb_string_free(q);
    propb_hypergraph_free(h);
    return 0;
}
