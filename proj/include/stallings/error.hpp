#ifndef STALLINGS_ERROR_HPP_
#define STALLINGS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace stallings {

  //! Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! Malformed textual input: a word, a graph file, a core file.
  class ParseError : public Error {
   public:
    using Error::Error;
  };

  //! Well-formed input on which the requested operation is undefined
  //! (rank mismatch, disconnected graph, incomplete core, ...).
  class DomainError : public Error {
   public:
    using Error::Error;
  };

}  // namespace stallings

#endif  // STALLINGS_ERROR_HPP_
