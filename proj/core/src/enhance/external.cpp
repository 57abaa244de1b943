#include "alight/enhance/enhancer.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include "alight/core/image_io.hpp"

namespace alight::enhance {
namespace {

class Fd {
public:
    Fd() = default;
    explicit Fd(int fd) : fd_(fd) {}
    Fd(const Fd&) = delete;
    Fd& operator=(const Fd&) = delete;
    Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
    Fd& operator=(Fd&& o) noexcept {
        if (this != &o) {
            reset();
            fd_ = std::exchange(o.fd_, -1);
        }
        return *this;
    }
    ~Fd() { reset(); }
    int get() const { return fd_; }
    void reset() {
        if (fd_ >= 0) ::close(fd_);
        fd_ = -1;
    }

private:
    int fd_ = -1;
};

struct Pipe {
    Fd read, write;
};

Pipe make_pipe() {
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0) throw EnhancementError(std::string("pipe failed: ") + std::strerror(errno));
    return {Fd(fds[0]), Fd(fds[1])};
}

std::string describe(const ExternalCommand& command) {
    std::string out;
    for (const auto& a : command.argv) {
        if (!out.empty()) out += ' ';
        out += a;
    }
    return out;
}

/// Kills and reaps the child if the interaction ends early.
class ChildGuard {
public:
    explicit ChildGuard(pid_t pid) : pid_(pid) {}
    ChildGuard(const ChildGuard&) = delete;
    ChildGuard& operator=(const ChildGuard&) = delete;
    ~ChildGuard() {
        if (pid_ > 0) {
            ::kill(pid_, SIGKILL);
            int status;
            ::waitpid(pid_, &status, 0);
        }
    }
    int wait() {
        int status = 0;
        while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
        }
        pid_ = -1;
        return status;
    }

private:
    pid_t pid_;
};

}  // namespace

Frame external_enhance(const Frame& frame, const ExternalCommand& command) {
    if (command.argv.empty()) throw EnhancementError("external enhancer command is empty");

    const std::vector<std::uint8_t> input = encode_pgm(frame.intensity);
    Pipe to_child = make_pipe();
    Pipe from_child = make_pipe();

    std::vector<char*> argv;
    for (const auto& a : command.argv) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);

    const pid_t pid = ::fork();
    if (pid < 0) throw EnhancementError(std::string("fork failed: ") + std::strerror(errno));
    if (pid == 0) {
        ::dup2(to_child.read.get(), STDIN_FILENO);
        ::dup2(from_child.write.get(), STDOUT_FILENO);
        ::execvp(argv[0], argv.data());
        ::_exit(127);
    }
    ChildGuard child(pid);
    to_child.read.reset();
    from_child.write.reset();
    ::fcntl(to_child.write.get(), F_SETFL, O_NONBLOCK);

    const auto deadline = std::chrono::steady_clock::now() + command.timeout;
    std::vector<std::uint8_t> output;
    std::size_t written = 0;
    std::uint8_t buffer[65536];
    bool reading = true;

    // SIGPIPE from a child that exits without reading must not kill us.
    struct sigaction ignore {}, previous {};
    ignore.sa_handler = SIG_IGN;
    ::sigaction(SIGPIPE, &ignore, &previous);
    struct RestoreSigpipe {
        struct sigaction* prev;
        ~RestoreSigpipe() { ::sigaction(SIGPIPE, prev, nullptr); }
    } restore{&previous};

    while (reading) {
        const auto now = std::chrono::steady_clock::now();
        if (now >= deadline) throw EnhancementError("external enhancer timed out: " + describe(command));
        const int wait_ms = static_cast<int>(
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count()) + 1;

        pollfd fds[2];
        nfds_t n = 0;
        fds[n++] = {from_child.read.get(), POLLIN, 0};
        const bool writing = to_child.write.get() >= 0;
        if (writing) fds[n++] = {to_child.write.get(), POLLOUT, 0};
        const int ready = ::poll(fds, n, wait_ms);
        if (ready < 0) {
            if (errno == EINTR) continue;
            throw EnhancementError(std::string("poll failed: ") + std::strerror(errno));
        }
        if (writing && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
            const ssize_t w = ::write(to_child.write.get(), input.data() + written, input.size() - written);
            if (w > 0) written += static_cast<std::size_t>(w);
            if (w < 0 && errno != EAGAIN && errno != EINTR) to_child.write.reset();
            if (written == input.size()) to_child.write.reset();
        }
        if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
            const ssize_t r = ::read(from_child.read.get(), buffer, sizeof buffer);
            if (r > 0) output.insert(output.end(), buffer, buffer + r);
            if (output.size() > input.size() * 4 + 4096)
                throw EnhancementError("external enhancer produced oversized output: " + describe(command));
            else if (r == 0) reading = false;
            else if (errno != EINTR && errno != EAGAIN) reading = false;
        }
    }

    const int status = child.wait();
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
        throw EnhancementError("external enhancer exited abnormally: " + describe(command));

    GrayImage image;
    try {
        image = decode_pgm(output);
    } catch (const IoError& e) {
        throw EnhancementError(std::string("external enhancer produced malformed output: ") + e.what());
    }
    if (!image.same_size(frame.intensity))
        throw EnhancementError("external enhancer changed the frame dimensions");

    Frame out = frame;
    out.intensity = std::move(image);
    out.enhanced = true;
    return out;
}

ExternalEnhancer::ExternalEnhancer(ExternalCommand command) : command_(std::move(command)) {
    if (command_.argv.empty()) throw InvalidInputError("external enhancer command is empty");
}

Frame ExternalEnhancer::enhance(const Frame& frame) {
    std::lock_guard lock(mutex_);
    return external_enhance(frame, command_);
}

std::string ExternalEnhancer::name() const { return "external(" + describe(command_) + ")"; }

FallbackEnhancer::FallbackEnhancer(std::unique_ptr<EnhancerPort> primary, std::unique_ptr<EnhancerPort> fallback,
                                   Logger log)
    : primary_(std::move(primary)), fallback_(std::move(fallback)), log_(std::move(log)) {
    if (!primary_ || !fallback_) throw InvalidInputError("fallback enhancer needs two enhancers");
}

Frame FallbackEnhancer::enhance(const Frame& frame) {
    try {
        return primary_->enhance(frame);
    } catch (const EnhancementError& e) {
        ++substitutions_;
        if (log_) log_(primary_->name() + " failed (" + e.what() + "); using " + fallback_->name());
        return fallback_->enhance(frame);
    }
}

std::string FallbackEnhancer::name() const { return primary_->name() + " -> " + fallback_->name(); }

}  // namespace alight::enhance
