#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace socatt {

enum class LogLevel { info, warning };

using LogSink = std::function<void(LogLevel, std::string_view)>;

/// Replaces the process-wide sink and returns the previous one. The default
/// sink writes warnings to stderr and drops info messages.
LogSink set_log_sink(LogSink sink);

void log_info(std::string_view message);
void log_warning(std::string_view message);

/// Emits a warning only the first time `key` is seen in this process.
void log_warning_once(std::string_view key, std::string_view message);

/// Captures every message emitted while alive; restores the previous sink on
/// destruction.
class ScopedLogCapture {
 public:
  ScopedLogCapture();
  ~ScopedLogCapture();
  ScopedLogCapture(const ScopedLogCapture&) = delete;
  ScopedLogCapture& operator=(const ScopedLogCapture&) = delete;

  int warnings() const { return warnings_; }
  const std::string& text() const { return text_; }

 private:
  LogSink previous_;
  int warnings_ = 0;
  std::string text_;
};

}  // namespace socatt
