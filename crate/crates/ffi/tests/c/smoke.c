#include <stdio.h>
#include <string.h>
#include "syzchain.h"

int main(void) {
    SyzSession *s = syz_session_new(0, 1);
    if (syz_butler(s, 1, 1, 3) != SYZ_STATUS_OK) return 1;
    if (!strstr(syz_session_output(s), "\"slope\": \"-3/2\"")) return 2;
    if (syz_bezout(s, 2, 4) != SYZ_STATUS_COPRIMALITY) return 3;
    if (!strstr(syz_session_last_error(s), "COPRIMALITY")) return 4;
    if (strcmp(syz_status_name(SYZ_STATUS_HYPOTHESIS), "HYPOTHESIS") != 0) return 5;
    syz_session_free(s);
    puts("ok");
    return 0;
}
