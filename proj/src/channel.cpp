#include "hqkd/channel.hpp"

#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <string>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

namespace hqkd {

namespace {

struct Queue {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::vector<std::uint8_t>> items;
    bool closed = false;

    void push(std::vector<std::uint8_t> v) {
        {
            std::lock_guard<std::mutex> lock(mu);
            if (closed) throw ChannelClosed("inproc: peer endpoint destroyed");
            items.push_back(std::move(v));
        }
        cv.notify_one();
    }

    std::vector<std::uint8_t> pop() {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return !items.empty() || closed; });
        if (items.empty()) throw ChannelClosed("inproc: peer endpoint destroyed");
        auto v = std::move(items.front());
        items.pop_front();
        return v;
    }

    void close() {
        {
            std::lock_guard<std::mutex> lock(mu);
            closed = true;
        }
        cv.notify_all();
    }
};

struct Link {
    Queue a_to_b, b_to_a;
};

class InProcChannel : public Channel {
public:
    InProcChannel(std::shared_ptr<Link> link, bool is_a) : link_(std::move(link)), is_a_(is_a) {}
    ~InProcChannel() override {
        link_->a_to_b.close();
        link_->b_to_a.close();
    }

    void send_bytes(const std::vector<std::uint8_t>& bytes) override {
        (is_a_ ? link_->a_to_b : link_->b_to_a).push(bytes);
    }
    std::vector<std::uint8_t> recv_bytes() override {
        return (is_a_ ? link_->b_to_a : link_->a_to_b).pop();
    }

private:
    std::shared_ptr<Link> link_;
    bool is_a_;
};

class TcpChannel : public Channel {
public:
    explicit TcpChannel(int fd) : fd_(fd) {}
    ~TcpChannel() override {
        if (fd_ >= 0) ::close(fd_);
    }

    void send_bytes(const std::vector<std::uint8_t>& bytes) override {
        std::size_t off = 0;
        while (off < bytes.size()) {
            ssize_t k = ::send(fd_, bytes.data() + off, bytes.size() - off, 0);
            if (k <= 0) throw ChannelClosed("tcp: send failed");
            off += std::size_t(k);
        }
    }

    std::vector<std::uint8_t> recv_bytes() override {
        std::vector<std::uint8_t> header(5);
        read_exact(header.data(), 5);
        std::size_t len = (std::size_t(header[1]) << 24) | (std::size_t(header[2]) << 16) |
                          (std::size_t(header[3]) << 8) | std::size_t(header[4]);
        if (len > (std::size_t(1) << 28)) throw FrameError("tcp: implausible frame length");
        std::vector<std::uint8_t> out(5 + len);
        std::memcpy(out.data(), header.data(), 5);
        read_exact(out.data() + 5, len);
        return out;
    }

private:
    void read_exact(std::uint8_t* p, std::size_t len) {
        std::size_t off = 0;
        while (off < len) {
            ssize_t k = ::recv(fd_, p + off, len - off, 0);
            if (k <= 0) throw ChannelClosed("tcp: connection closed mid-frame");
            off += std::size_t(k);
        }
    }

    int fd_;
};

} // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_inproc_pair() {
    auto link = std::make_shared<Link>();
    return {std::make_unique<InProcChannel>(link, true),
            std::make_unique<InProcChannel>(link, false)};
}

TcpListener::TcpListener(std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw ChannelClosed("tcp: socket() failed");
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0)
        throw ChannelClosed("tcp: bind failed");
    if (::listen(fd_, 1) != 0) throw ChannelClosed("tcp: listen failed");
    socklen_t alen = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &alen);
    port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
    if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<Channel> TcpListener::accept_one() {
    int cfd = ::accept(fd_, nullptr, nullptr);
    if (cfd < 0) throw ChannelClosed("tcp: accept failed");
    return std::make_unique<TcpChannel>(cfd);
}

std::unique_ptr<Channel> tcp_connect(const std::string& host, std::uint16_t port) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw ChannelClosed("tcp: socket() failed");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd);
        throw ChannelClosed("tcp: bad host address " + host);
    }
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
        ::close(fd);
        throw ChannelClosed("tcp: connect failed");
    }
    return std::make_unique<TcpChannel>(fd);
}

} // namespace hqkd
