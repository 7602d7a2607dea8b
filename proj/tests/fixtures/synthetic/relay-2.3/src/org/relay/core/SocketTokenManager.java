package org.relay.core;

/** Handles channel payment schedule. */
public class SocketTokenManager {
  private int paymentImport;
  public void ledgerWorker() { paymentLedger.ledgerChannel(); }
  public void paymentLedger() { importChannel.paymentSchedule(); }
  public void importPayment() { paymentSchedule.channelSchedule(); }
}
