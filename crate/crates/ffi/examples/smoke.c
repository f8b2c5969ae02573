/* Prints ⟨ê,f̂⟩ for every node; exits nonzero on any failure. */
#include <inttypes.h>
#include <stdio.h>

#include "mckay_e8.h"

int main(void) {
  MckayWorkspace *ws = NULL;
  if (mckay_workspace_new(&ws) != MCKAY_STATUS_OK) {
    fprintf(stderr, "workspace: %s\n", mckay_last_error());
    return 2;
  }
  int failed = 0;
  for (size_t i = 0; i < 9; i++) {
    MckayNodeReport *r = NULL;
    int64_t num, den;
    if (mckay_node_report(ws, i, &r) != MCKAY_STATUS_OK ||
        mckay_node_report_inner(r, &num, &den) != MCKAY_STATUS_OK) {
      fprintf(stderr, "node %zu: %s\n", i, mckay_last_error());
      failed = 1;
    } else {
      int pass = mckay_node_report_pass(r) == MCKAY_STATUS_OK;
      printf("%zu %" PRId64 "/%" PRId64 " %s\n", i, num, den, pass ? "pass" : "FAIL");
      failed |= !pass;
    }
    mckay_node_report_free(r);
  }
  mckay_workspace_free(ws);
  return failed;
}
