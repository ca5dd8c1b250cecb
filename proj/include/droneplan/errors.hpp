#pragma once

#include <stdexcept>
#include <string>

namespace droneplan {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class OutOfCoverage : public Error {
public:
    using Error::Error;
};

class NoDataCell : public Error {
public:
    using Error::Error;
};

class EmptyInstance : public Error {
public:
    using Error::Error;
};

class EmptyNetwork : public Error {
public:
    using Error::Error;
};

class DegenerateNetwork : public Error {
public:
    using Error::Error;
};

class InfeasiblePatient : public Error {
public:
    InfeasiblePatient(int patient_index, const std::string& what)
        : Error(what), patient(patient_index) {}
    int patient;
};

class CoverageGap : public Error {
public:
    CoverageGap(int patient_index, const std::string& what)
        : Error(what), patient(patient_index) {}
    int patient;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

} // namespace droneplan
