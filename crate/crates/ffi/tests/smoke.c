#include <stdio.h>
#include <string.h>
#include "stable_pieces.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "check failed: %s\n", #cond); return 1; } } while (0)

int main(void) {
    SpSession *s = NULL;
    CHECK(sp_session_new_type("A2", "1:2,2:1", &s) == SP_STATUS_OK);
    size_t n = 0;
    CHECK(sp_piece_count(s, &n) == SP_STATUS_OK && n == 13);

    size_t dim = 0;
    CHECK(sp_piece_dimension(s, "J=1,2;w=", &dim) == SP_STATUS_OK && dim == 8);
    bool leq = false;
    CHECK(sp_leq(s, "J=;w=", "J=1,2;w=", &leq) == SP_STATUS_OK && leq);

    char *dot = NULL;
    CHECK(sp_hasse_dot(s, &dot) == SP_STATUS_OK && strstr(dot, "digraph") == dot);
    sp_string_free(dot);

    CHECK(sp_piece_dimension(s, "J=1;w=2", &dim) == SP_STATUS_NOT_MINIMAL);
    CHECK(strcmp(sp_last_error(), "w is not minimal in its coset") == 0);
    sp_session_free(s);

    int32_t bad[4] = {2, -1, 0, 2};
    SpSession *t = NULL;
    CHECK(sp_session_new_cartan(bad, 2, NULL, &t) == SP_STATUS_INVALID_CARTAN && t == NULL);
    printf("ok\n");
    return 0;
}
