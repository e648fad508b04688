#pragma once

namespace macsim {

enum ExitCode {
    kOk = 0,
    kInternalError = 1,
    kUsageError = 2,
    kUnknownTechnique = 3,
    kInvalidSweep = 4,
    kUnwritablePath = 5,
    kConfigError = 6,
    kCsvError = 7,
    kCompareFailed = 8,
};

/// Entry point behind the `macsim` binary, callable in-process for tests.
int cli_main(int argc, const char* const* argv);

}  // namespace macsim
