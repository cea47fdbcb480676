#include <stdio.h>
#include "thermosep.h"

int main(void) {
    ThermosepParams *params = thermosep_params_reference();
    double length = 0.0, w0 = 0.0;
    if (thermosep_symmetric_length(params, 0.5, &length) != THERMOSEP_STATUS_OK) return 1;
    if (thermosep_quasi_static_work(params, &w0) != THERMOSEP_STATUS_OK) return 1;

    ThermosepParams *bad = NULL;
    if (thermosep_params_new(1.0, 300.0, 2.0, 1.0, 1.0, 1.0, &bad) != THERMOSEP_STATUS_DOMAIN) return 2;
    char msg[128];
    if (thermosep_last_error_message(msg, sizeof msg) == 0) return 3;

    ThermosepProtocol *protocol = NULL;
    ThermosepTrajectory *run = NULL;
    double total = 0.0, excess = 0.0;
    if (thermosep_protocol_symmetric(params, 1001, &protocol) != THERMOSEP_STATUS_OK) return 4;
    if (thermosep_evolve(params, protocol, 100.0, &run) != THERMOSEP_STATUS_OK) return 5;
    thermosep_trajectory_work(run, &total, &excess);

    printf("%.6f %.3f %.4f\n", length, w0, excess);
    thermosep_trajectory_free(run);
    thermosep_protocol_free(protocol);
    thermosep_params_free(params);
    return 0;
}
