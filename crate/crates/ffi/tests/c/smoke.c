#include <stdio.h>
#include <string.h>
#include "liework.h"

#define EXPECT(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (line %d)\n", #cond, __LINE__); return 1; } } while (0)

int main(void) {
    LwLie *h = NULL;
    EXPECT(lw_lie_catalog("heisenberg3", &h) == LW_STATUS_OK);
    size_t dim = 0;
    EXPECT(lw_lie_dim(h, &dim) == LW_STATUS_OK && dim == 3);
    EXPECT(lw_lie_derivations_dim(h, false, &dim) == LW_STATUS_OK && dim == 6);
    EXPECT(lw_lie_nilradical_condition(h) == LW_STATUS_OK);
    lw_lie_free(h);

    LwLie *r = NULL;
    EXPECT(lw_lie_catalog("rototranslation", &r) == LW_STATUS_OK);
    EXPECT(lw_lie_nilradical_condition(r) == LW_STATUS_PRECONDITION);
    EXPECT(lw_last_error_message() != NULL);
    lw_lie_free(r);

    LwGroup *g = NULL;
    EXPECT(lw_group_catalog("fourpoint-discrete", &g) == LW_STATUS_OK);
    LwTfae t;
    EXPECT(lw_group_tfae(g, &t) == LW_STATUS_OK);
    EXPECT(t.isometry_count == 24 && t.affine_count == 8 && !t.a && t.equivalent);
    lw_group_free(g);

    EXPECT(lw_lie_parse("lie_algebra x\ndim 2\nbasis a b\nbracket [a,q] = a\nend\n", &h) == LW_STATUS_PARSE);
    printf("ok\n");
    return 0;
}
