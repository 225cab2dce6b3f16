#include "trn/smart_house.hpp"

namespace trn {

Trn smart_house_trn() {
  Pstn pstn;
  Stn& stn = pstn.base;
  const EventId day_start = stn.add_event("day_start");
  const EventId day_end = stn.add_event("day_end");
  const EventId wash_start = stn.add_event("wash_start");
  const EventId wash_end = stn.add_event("wash_end");
  const EventId arrival = stn.add_event("arrival");
  const EventId cook_start = stn.add_event("cook_start");
  const EventId cook_end = stn.add_event("cook_end");
  const EventId lights_on = stn.add_event("lights_on");
  const EventId lights_off = stn.add_event("lights_off");
  const EventId sunset = stn.add_event("sunset");
  const EventId snack_start = stn.add_event("snack_start");
  const EventId snack_end = stn.add_event("snack_end");

  stn.add_constraint(day_start, day_end, 780.0, 780.0);
  for (EventId e : {wash_start, wash_end, cook_start, cook_end, lights_on,
                    lights_off, snack_start, snack_end})
    stn.add_constraint(day_start, e, 0.0, 780.0);

  // Laundry must be out of the machine by the time the homeowner gets back.
  stn.add_constraint(wash_start, wash_end, 120.0, 120.0);
  stn.add_constraint(wash_end, arrival, 0.0, kInf);

  // Dinner lands within a quarter hour of the arrival, either side.
  stn.add_constraint(cook_start, cook_end, 30.0, 30.0);
  stn.add_constraint(arrival, cook_end, -15.0, 15.0);

  // Lights from (at latest) sunset until the end of the evening.
  stn.add_constraint(lights_on, lights_off, 0.0, kInf);
  stn.add_constraint(lights_on, sunset, 0.0, kInf);
  stn.add_constraint(day_start, lights_off, 720.0, 780.0);

  stn.add_constraint(snack_start, snack_end, 30.0, 30.0);
  stn.add_constraint(day_start, snack_start, 600.0, kInf);
  stn.add_constraint(day_start, snack_end, -kInf, 660.0);

  pstn.udns.push_back({day_start, arrival, {300.0, 5.0}});
  pstn.udns.push_back({day_start, sunset, {420.0, 1.0}});
  pstn.probability = 0.98;

  std::vector<ResourceConstraint> resources{
      {day_start, day_end, -150.0},  // net-metering headroom
      {wash_start, wash_end, 130.0},
      {cook_start, cook_end, 100.0},
      {lights_on, lights_off, 80.0},
      {snack_start, snack_end, 20.0},
  };
  return Trn{Atn{std::move(pstn)}, std::move(resources)};
}

}  // namespace trn
