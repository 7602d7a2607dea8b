package org.relay.util;

/** Handles schedule format export. */
public class ImportConfig {
  private int loginCustomer;
  public void customerSchedule() { scheduleLogin.loginSchedule(); }
  public void scheduleCustomer() { formatTransfer.scheduleLogin(); }
  public void customerTransfer() { formatSchedule.loginCustomer(); }
}
