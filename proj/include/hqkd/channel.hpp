#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hqkd/frames.hpp"

namespace hqkd {

class ChannelClosed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One endpoint of a bidirectional frame pipe. Each send_bytes call carries
// exactly one encoded frame; recv_bytes returns exactly one.
class Channel {
public:
    virtual ~Channel() = default;
    virtual void send_bytes(const std::vector<std::uint8_t>& bytes) = 0;
    virtual std::vector<std::uint8_t> recv_bytes() = 0;

    void send_frame(const Frame& f) { send_bytes(frame_encode(f)); }
    Frame recv_frame() { return frame_decode(recv_bytes()); }
};

// Deterministic in-process queue pair for two threads.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_inproc_pair();

// Blocking TCP transport; frames are delimited by their own 5-byte header.
// listen_port = 0 picks an ephemeral port (readable via bound_port()).
class TcpListener {
public:
    explicit TcpListener(std::uint16_t port);
    ~TcpListener();
    std::uint16_t bound_port() const { return port_; }
    std::unique_ptr<Channel> accept_one();

private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

std::unique_ptr<Channel> tcp_connect(const std::string& host, std::uint16_t port);

/// Test wrapper: applies a mutation to the bytes of selected frames in
// transit (by 0-based receive index). Used for forgery/abort tests.
class TamperingChannel : public Channel {
public:
    using Mutator = std::function<void(std::vector<std::uint8_t>&)>;

    TamperingChannel(std::unique_ptr<Channel> inner, std::size_t target_index, Mutator mutate)
        : inner_(std::move(inner)), target_(target_index), mutate_(std::move(mutate)) {}

    void send_bytes(const std::vector<std::uint8_t>& bytes) override {
        inner_->send_bytes(bytes);
    }
    std::vector<std::uint8_t> recv_bytes() override {
        auto b = inner_->recv_bytes();
        if (count_++ == target_) mutate_(b);
        return b;
    }

private:
    std::unique_ptr<Channel> inner_;
    std::size_t target_;
    Mutator mutate_;
    std::size_t count_ = 0;
};

/// Test wrapper: records every frame's bytes in both directions.
class RecordingChannel : public Channel {
public:
    explicit RecordingChannel(std::unique_ptr<Channel> inner) : inner_(std::move(inner)) {}

    void send_bytes(const std::vector<std::uint8_t>& bytes) override {
        sent_.insert(sent_.end(), bytes.begin(), bytes.end());
        inner_->send_bytes(bytes);
    }
    std::vector<std::uint8_t> recv_bytes() override {
        auto b = inner_->recv_bytes();
        received_.insert(received_.end(), b.begin(), b.end());
        return b;
    }

    const std::vector<std::uint8_t>& sent() const { return sent_; }
    const std::vector<std::uint8_t>& received() const { return received_; }

private:
    std::unique_ptr<Channel> inner_;
    std::vector<std::uint8_t> sent_, received_;
};

} // namespace hqkd
