#pragma once

#include <cstdarg>

namespace sqgrasp {

// Verbosity is read once from the SUPERQ_LOG environment variable
// (error | info | debug); default is error.
enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level();

void log(LogLevel level, const char* format, ...)
#if defined(__GNUC__)
    __attribute__((format(printf, 2, 3)))
#endif
    ;

void log_info(const char* format, ...)
#if defined(__GNUC__)
    __attribute__((format(printf, 1, 2)))
#endif
    ;

void log_debug(const char* format, ...)
#if defined(__GNUC__)
    __attribute__((format(printf, 1, 2)))
#endif
    ;

void log_error(const char* format, ...)
#if defined(__GNUC__)
    __attribute__((format(printf, 1, 2)))
#endif
    ;

}  // namespace sqgrasp
