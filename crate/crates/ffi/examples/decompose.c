#include <stdio.h>
#include "semigold.h"

int main(int argc, char **argv) {
    const char *text = argc > 1 ? argv[1] : "2x + 3";
    struct SgPoly *p = NULL;
    if (sg_poly_parse(text, "n0", NULL, &p) != SG_STATUS_OK) {
        fprintf(stderr, "%s\n", sg_last_error());
        return 2;
    }
    char *json = NULL;
    enum SgStatus st = sg_decompose_json(p, NULL, &json);
    if (st == SG_STATUS_OK) {
        puts(json);
        sg_string_free(json);
    } else {
        fprintf(stderr, "%s\n", sg_last_error());
    }
    sg_poly_free(p);
    return st == SG_STATUS_OK ? 0 : 1;
}
