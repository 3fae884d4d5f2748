#include "cslow/microcode.hpp"

namespace cslow::micro {

namespace {

using T = Transfer;
using C = Condition;

MicroProgram build() {
  const Control fetch = Control::go(kFetchRow);
  return MicroProgram{{
      /*  0 */ {"", {T::PcClear}, Control::next()},
      /*  1 */ {"FETCH", {T::MarFromPc}, Control::next()},
      /*  2 */ {"", {T::IrFromMem, T::PcIncrement}, Control::next()},
      /*  3 */ {"DECODE", {}, Control::when(C::I3, 14)},
      /*  4 */ {"", {}, Control::when(C::XC0, 8)},
      /*  5 */ {"", {}, Control::when(C::XC1, 10)},
      /*  6 */ {"", {}, Control::when(C::XC2, 12)},
      /*  7 */ {"", {}, Control::go(kHaltRow)},
      /*  8 */ {"CMA", {T::AComplement}, Control::next()},
      /*  9 */ {"", {}, fetch},
      /* 10 */ {"INCA", {T::AIncrement}, Control::next()},
      /* 11 */ {"", {}, fetch},
      /* 12 */ {"DCRA", {T::ADecrement}, Control::next()},
      /* 13 */ {"", {}, fetch},
      /* 14 */ {"MEMREF", {}, Control::when(C::XC0, 23)},
      /* 15 */ {"", {}, Control::when(C::XC1, 32)},
      /* 16 */ {"", {}, Control::when(C::XC2, 41)},
      /* 17 */ {"AND", {T::MarFromPc}, Control::next()},
      /* 18 */ {"", {T::BufferFromMem, T::PcIncrement}, Control::next()},
      /* 19 */ {"", {T::MarFromBuffer}, Control::next()},
      /* 20 */ {"", {T::BufferFromMem}, Control::next()},
      /* 21 */ {"", {T::AAndBuffer}, Control::next()},
      /* 22 */ {"", {}, fetch},
      /* 23 */ {"LDSTO", {T::MarFromPc}, Control::next()},
      /* 24 */ {"", {T::BufferFromMem, T::PcIncrement}, Control::next()},
      /* 25 */ {"", {T::MarFromBuffer}, Control::next()},
      /* 26 */ {"", {}, Control::when(C::I0Set, 30)},
      /* 27 */ {"LOAD", {T::BufferFromMem}, Control::next()},
      /* 28 */ {"", {T::AFromBuffer}, Control::next()},
      /* 29 */ {"", {}, fetch},
      /* 30 */ {"STO", {T::MemFromA}, Control::next()},
      /* 31 */ {"", {}, fetch},
      /* 32 */ {"ADSUB", {T::MarFromPc}, Control::next()},
      /* 33 */ {"", {T::BufferFromMem, T::PcIncrement}, Control::next()},
      /* 34 */ {"", {T::MarFromBuffer}, Control::next()},
      /* 35 */ {"", {T::BufferFromMem}, Control::next()},
      // I0 = 1 selects SUB (ADD 1100, SUB 1101), mirroring the LOAD/STO
      // split on row 26.
      /* 36 */ {"", {}, Control::when(C::I0Set, 39)},
      /* 37 */ {"ADD", {T::AAddBuffer}, Control::next()},
      /* 38 */ {"", {}, fetch},
      /* 39 */ {"SUB", {T::ASubBuffer}, Control::next()},
      /* 40 */ {"", {}, fetch},
      /* 41 */ {"JUMP", {T::MarFromPc}, Control::next()},
      /* 42 */ {"", {}, Control::when(C::I0Clear, 44)},
      /* 43 */ {"", {}, Control::when(C::I0Set, 47)},
      /* 44 */ {"JOZ", {}, Control::when(C::Zero, 50)},
      /* 45 */ {"", {T::PcIncrement}, Control::next()},
      /* 46 */ {"", {}, fetch},
      /* 47 */ {"JOC", {}, Control::when(C::Carry, 50)},
      /* 48 */ {"", {T::PcIncrement}, Control::next()},
      /* 49 */ {"", {}, fetch},
      /* 50 */ {"LOADPC", {T::PcFromMem}, Control::next()},
      /* 51 */ {"", {}, fetch},
      /* 52 */ {"HALT", {}, Control::go(kHaltRow)},
  }};
}

}  // namespace

const MicroProgram& microprogram() {
  static const MicroProgram program = build();
  return program;
}

std::string_view to_string(Transfer t) {
  switch (t) {
    case T::PcClear: return "pc<-0";
    case T::MarFromPc: return "MAR<-pc";
    case T::IrFromMem: return "IR<-M(MAR)";
    case T::PcIncrement: return "pc<-pc+1";
    case T::AComplement: return "A<-~A";
    case T::AIncrement: return "A<-A+1";
    case T::ADecrement: return "A<-A-1";
    case T::AAndBuffer: return "A<-A&Buffer";
    case T::BufferFromMem: return "Buffer<-M(MAR)";
    case T::MarFromBuffer: return "MAR<-Buffer";
    case T::AFromBuffer: return "A<-Buffer";
    case T::MemFromA: return "M(MAR)<-A";
    case T::AAddBuffer: return "A<-A+Buffer";
    case T::ASubBuffer: return "A<-A-Buffer";
    case T::PcFromMem: return "pc<-M(MAR)";
    case T::Nop: return "nop";
  }
  return "?";
}

}  // namespace cslow::micro
