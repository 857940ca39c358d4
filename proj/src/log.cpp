#include "socatt/log.hpp"

#include <iostream>
#include <mutex>
#include <set>

namespace socatt {
namespace {

std::mutex& log_mutex() {
  static std::mutex m;
  return m;
}

LogSink& current_sink() {
  static LogSink sink = [](LogLevel level, std::string_view message) {
    if (level == LogLevel::warning) std::cerr << "warning: " << message << '\n';
  };
  return sink;
}

void emit(LogLevel level, std::string_view message) {
  std::lock_guard lock(log_mutex());
  if (current_sink()) current_sink()(level, message);
}

}  // namespace

LogSink set_log_sink(LogSink sink) {
  std::lock_guard lock(log_mutex());
  std::swap(current_sink(), sink);
  return sink;
}

void log_info(std::string_view message) { emit(LogLevel::info, message); }
void log_warning(std::string_view message) { emit(LogLevel::warning, message); }

void log_warning_once(std::string_view key, std::string_view message) {
  static std::mutex seen_mutex;
  static std::set<std::string, std::less<>> seen;
  {
    std::lock_guard lock(seen_mutex);
    if (!seen.emplace(key).second) return;
  }
  log_warning(message);
}

ScopedLogCapture::ScopedLogCapture() {
  previous_ = set_log_sink([this](LogLevel level, std::string_view message) {
    if (level == LogLevel::warning) ++warnings_;
    text_.append(message);
    text_.push_back('\n');
  });
}

ScopedLogCapture::~ScopedLogCapture() { set_log_sink(std::move(previous_)); }

}  // namespace socatt
