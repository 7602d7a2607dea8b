package org.relay.core;

/** Handles report schedule writer. */
public class UserReaderManager {
  private int messageWriter;
  public void cachePayment() { paymentCache.paymentMessage(); }
  public void scheduleCache() { scheduleCache.writerReport(); }
  public void paymentCache() { paymentSchedule.writerReport(); }
}
