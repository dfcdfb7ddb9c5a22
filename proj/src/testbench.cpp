#include "cdv/testbench.hpp"

#include "cdv/recorder.hpp"

namespace cdv {

RunResult run_test(const Test& test, const RunConfig& config) {
  if (config.horizon == 0) throw ConfigError("horizon must be positive");
  Kernel kernel;
  Recorder recorder(kernel);
  World world(config.layout);
  HandoverController robot(world, recorder, config.robot);
  Driver driver(test, world, recorder, config.driver);

  const ProcessId world_id = kernel.add_process("world", Priority::world, world);
  const ProcessId driver_id = kernel.add_process("driver", Priority::driver, driver);
  const ProcessId robot_id = kernel.add_process("robot", Priority::sut, robot);
  world.attach(kernel, world_id);
  driver.attach(kernel, driver_id);
  robot.attach(kernel, robot_id, world_id);
  robot.start();
  driver.start();
  kernel.run_until(SimTime{config.horizon});

  RunResult r;
  r.test_id = test.id;
  r.log = kernel.log();
  r.trace = recorder.trace();
  r.trace.end = SimTime{config.horizon + 1};
  r.drive = driver.drive_log();
  r.block_hits = robot.block_hits();
  r.transitions = robot.transitions();
  r.state_path = robot.state_path();
  r.outcome = robot.outcome();
  r.monitors = check_trace(r.trace, test.id, config.monitors);
  r.coverage = collect(r.trace, r.block_hits, r.transitions, r.monitors);
  return r;
}

}  // namespace cdv
