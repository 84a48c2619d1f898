#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "gpa/lang/parser.hpp"
#include "gpa/lang/validator.hpp"

inline gpa::lang::ValidatedModel load(const std::string& source) {
  return gpa::lang::validate(gpa::lang::parse_model(source));
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string client_server_source(double req, double brk, double think, double data,
                                        double reset, long c, long s) {
  std::ostringstream out;
  out.precision(17);
  out << "r_req = " << req << "; r_break = " << brk << "; r_think = " << think
      << "; r_data = " << data << "; r_reset = " << reset << ";\n"
      << "c = " << c << "; s = " << s << ";\n"
      << "Client = (request, r_req).Client_waiting;\n"
         "Client_waiting = (data, r_data).Client_think;\n"
         "Client_think = (think, r_think).Client;\n"
         "Server = (request, r_req).Server_get + (break, r_break).Server_broken;\n"
         "Server_get = (data, r_data).Server;\n"
         "Server_broken = (reset, r_reset).Server;\n"
         "Clients{Client[c]} <request, data> Servers{Server[s]}\n";
  return out.str();
}

inline std::string model_a(long c = 100, long s = 50) {
  return client_server_source(2.0, 0.1, 0.20, 1.0, 2.0, c, s);
}

inline std::string model_b(long c = 100, long s = 50) {
  return client_server_source(2.0, 0.3, 0.35, 2.0, 0.05, c, s);
}

inline std::string processor_resource_source(long m, long n, double r1 = 2.0, double q = 14.0,
                                             double r2 = 14.0, double s = 2.0) {
  std::ostringstream out;
  out.precision(17);
  out << "r1 = " << r1 << "; q = " << q << "; m = " << m << ";\n"
      << "r2 = " << r2 << "; s = " << s << "; n = " << n << ";\n"
      << "Processor0 = (acquire, r1).Processor1;\n"
         "Processor1 = (task, q).Processor0;\n"
         "Resource0 = (acquire, r2).Resource1;\n"
         "Resource1 = (reset, s).Resource0;\n"
         "Processors{Processor0[m]} <acquire> Resources{Resource0[n]}\n";
  return out.str();
}
