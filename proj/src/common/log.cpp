#include "sqgrasp/common/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace sqgrasp {

namespace {

LogLevel parse_env_level() {
    const char* env = std::getenv("SUPERQ_LOG");
    if (!env) return LogLevel::error;
    if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::info;
    return LogLevel::error;
}

const char* prefix(LogLevel level) {
    switch (level) {
        case LogLevel::error: return "[error] ";
        case LogLevel::info: return "[info] ";
        case LogLevel::debug: return "[debug] ";
    }
    return "";
}

std::mutex g_log_mutex;

void vlog(LogLevel level, const char* format, std::va_list args) {
    if (static_cast<int>(level) > static_cast<int>(log_level())) return;
    std::lock_guard<std::mutex> lock(g_log_mutex);
    std::fputs(prefix(level), stderr);
    std::vfprintf(stderr, format, args);
    std::fputc('\n', stderr);
}

}  // namespace

LogLevel log_level() {
    static const LogLevel level = parse_env_level();
    return level;
}

void log(LogLevel level, const char* format, ...) {
    std::va_list args;
    va_start(args, format);
    vlog(level, format, args);
    va_end(args);
}

void log_info(const char* format, ...) {
    std::va_list args;
    va_start(args, format);
    vlog(LogLevel::info, format, args);
    va_end(args);
}

void log_debug(const char* format, ...) {
    std::va_list args;
    va_start(args, format);
    vlog(LogLevel::debug, format, args);
    va_end(args);
}

void log_error(const char* format, ...) {
    std::va_list args;
    va_start(args, format);
    vlog(LogLevel::error, format, args);
    va_end(args);
}

}  // namespace sqgrasp
